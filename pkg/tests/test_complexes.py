import itertools

import pytest

from titscomplex import (
    Mat,
    RingSpec,
    build_filtration,
    build_tits_complex,
    congruence_generators,
    elementary_matrix,
    enumerate_good_flags,
    gl_generators,
    make_ring,
    parse_ring_spec,
    reduction_map,
)
from titscomplex.grassmann import flag_type, proper_ranks
from titscomplex.rings import BudgetExceeded


def test_build_examples(built):
    cx = built.complex("F2", 3)
    assert cx.f_vector == [14, 21]
    assert sum(1 for s in cx.vertices if s.rank == 1) == 7
    assert sum(1 for s in cx.vertices if s.rank == 2) == 7
    cx2 = built.complex("Z/4", 2)
    assert cx2.f_vector == [6]
    assert cx2.dim == 0
    cx3 = built.complex("Z/4", 3)
    assert cx3.f_vector == [56, 168]


def test_empty_complex():
    cx = build_tits_complex(make_ring(RingSpec.modular(4)), 1)
    assert cx.dim == -1
    assert cx.f_vector == []


def test_vertices_sorted_by_rank_then_fingerprint(built):
    cx = built.complex("F2", 3)
    keys = [(s.rank, s.key) for s in cx.vertices]
    assert keys == sorted(keys)


def test_simplices_respect_cofree_order(built):
    cx = built.complex("Z/4", 3)
    from titscomplex.linalg import quotient_free_rank_members

    ring = cx.ring
    for t in cx.simplices[1][::13]:
        v, w = cx.vertices[t[0]], cx.vertices[t[1]]
        assert v.rank < w.rank
        assert v.members <= w.members
        gap = quotient_free_rank_members(ring, 3, w.key, v.members)
        assert gap == w.rank - v.rank


def test_purity(built):
    for label, n in [("Z/4", 2), ("Z/4", 3), ("F2", 3), ("F2", 4), ("Z/6", 2)]:
        assert built.complex(label, n).is_pure(), (label, n)


def test_no_included_not_cofree_pairs(built):
    for label, n in [("Z/4", 3), ("F2", 4), ("Z/6", 2)]:
        assert built.complex(label, n).included_not_cofree == 0


def test_filtration_examples(built):
    z4 = make_ring(RingSpec.modular(4))
    full = built.complex("Z/4", 3)
    filt = build_filtration(z4, 3, 2)
    assert filt.f_vector == full.f_vector
    assert [s.key for s in filt.vertices] == [s.key for s in full.vertices]
    rank1 = build_filtration(z4, 3, 1)
    assert rank1.f_vector == [28]
    f42 = built.complex("Z/4", 4, 2)
    assert f42.f_vector == [680, 3360]


def test_filtration_range_errors():
    z4 = make_ring(RingSpec.modular(4))
    with pytest.raises(ValueError):
        build_filtration(z4, 3, 0)
    with pytest.raises(ValueError):
        build_filtration(z4, 3, 3)


def test_filtration_edges_are_type_112_flags(built):
    f42 = built.complex("Z/4", 4, 2)
    flags = enumerate_good_flags(f42.ring, 4, (1, 1, 2))
    assert len(flags) == len(f42.simplices[1]) == 3360


def test_budget_exceeded_reports_estimate():
    z6 = make_ring(RingSpec.modular(6))
    with pytest.raises(BudgetExceeded) as exc:
        build_tits_complex(z6, 4, budget=1000)
    assert exc.value.estimate > 1000


def test_link_and_star(built):
    cx = built.complex("F2", 3)
    plane = next(i for i, s in enumerate(cx.vertices) if s.rank == 2)
    link, star = cx.link_and_star((plane,))
    assert link.f_vector == [3]  # the lines inside that plane
    assert star.dim == 1
    facet = cx.facets()[0]
    linkf, starf = cx.link_and_star(facet)
    assert linkf.dim == -1
    assert starf.f_vector[-1] >= 1
    # over Z/4, a line sits under one plane per line of the rank-2 quotient
    cx3 = built.complex("Z/4", 3)
    line = next(i for i, s in enumerate(cx3.vertices) if s.rank == 1)
    link3, _ = cx3.link_and_star((line,))
    assert link3.f_vector == [6]
    with pytest.raises(ValueError):
        cx.link_and_star((0, 1, 2, 3))


def test_link_of_line_matches_quotient_line_count(built):
    # independent count: lines of R^3 / L correspond to planes over L
    cx3 = built.complex("Z/4", 3)
    from titscomplex import grassmannian_size_formula

    line = next(i for i, s in enumerate(cx3.vertices) if s.rank == 1)
    link, _ = cx3.link_and_star((line,))
    assert len(link.vertex_set()) == grassmannian_size_formula(RingSpec.modular(4), 2, 1)


def test_nerve_double_construction(built):
    cx = built.complex("Z/4", 3)
    ring = cx.ring
    by_dim = {}
    for lam in [(1, 2), (2, 1), (1, 1, 1)]:
        ranks = proper_ranks(flag_type(lam, 3))
        for fl in enumerate_good_flags(ring, 3, lam):
            t = tuple(cx.vindex[s.members] for s in fl.summands)
            by_dim.setdefault(len(t) - 1, set()).add(t)
    for d, level in enumerate(cx.simplices):
        assert set(level) == by_dim[d], f"dimension {d}"


def test_group_action_examples(built):
    f2 = make_ring(RingSpec.prime_field(2))
    cx = build_tits_complex(f2, 2)
    g = elementary_matrix(f2, 2, 0, 1, f2.one)
    perm = cx.vertex_permutation(g)
    gens = {i: cx.ring.vec_payloads(s.preferred_basis[0]) for i, s in enumerate(cx.vertices)}
    e1 = next(i for i, v in gens.items() if v == (1, 0))
    e2 = next(i for i, v in gens.items() if v == (0, 1))
    e12 = next(i for i, v in gens.items() if v == (1, 1))
    assert perm[e1] == e1
    assert perm[e2] == e12 and perm[e12] == e2
    ident = Mat.identity(f2, 2)
    assert cx.vertex_permutation(ident) == tuple(range(len(cx.vertices)))


def test_group_action_axioms_and_strata(built):
    cx = built.complex("Z/4", 3)
    ring = cx.ring
    gens = gl_generators(ring, 3)
    for g, h in itertools.islice(itertools.product(gens[:5], gens[:5]), 12):
        pg, ph = cx.vertex_permutation(g), cx.vertex_permutation(h)
        pgh = cx.vertex_permutation(g.mul_mat(h))
        assert tuple(pg[ph[i]] for i in range(len(ph))) == pgh
    for g in gens:
        p = cx.vertex_permutation(g)
        assert all(cx.vertices[i].rank == cx.vertices[p[i]].rank for i in range(len(p)))


def test_action_transitive_per_stratum(built):
    for label in ["Z/4", "F3"]:
        cx = built.complex(label, 3)
        perms = [cx.vertex_permutation(g) for g in gl_generators(cx.ring, 3)]
        for rank in (1, 2):
            stratum = [i for i, s in enumerate(cx.vertices) if s.rank == rank]
            seen = {stratum[0]}
            frontier = [stratum[0]]
            while frontier:
                frontier = [
                    j for i in frontier for p in perms if (j := p[i]) not in seen and not seen.add(j)
                ]
            assert seen == set(stratum)


def test_action_rejects_noninvertible(built):
    cx = built.complex("Z/4", 2)
    bad = Mat.from_payload_rows(cx.ring, [[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        cx.vertex_permutation(bad)


def test_reduction_map_examples(built):
    cx2 = built.complex("Z/4", 2)
    red = reduction_map(cx2, [2])
    assert red.dst.ring.spec.label == "Z/2"
    assert len(red.dst.vertices) == 3
    from collections import Counter

    assert sorted(Counter(red.vertex_map).values()) == [2, 2, 2]
    assert red.is_simplicial() and red.is_surjective_on_vertices()
    red0 = reduction_map(cx2, [0])
    assert red0.vertex_map == list(range(6))
    cx3 = built.complex("Z/4", 3)
    red3 = reduction_map(cx3, [2])
    assert len(red3.dst.vertices) == 14
    assert red3.is_simplicial() and red3.is_surjective_on_vertices()


def test_reduction_sends_facets_to_facets(built):
    cx3 = built.complex("Z/4", 3)
    red = reduction_map(cx3, [2])
    top = cx3.dim
    dst_pos = red.dst.simplex_pos[top]
    for t in cx3.simplices[top]:
        assert red.simplex_image(t) in dst_pos


def test_reduction_commutes_with_action(built):
    cx3 = built.complex("Z/4", 3)
    red = reduction_map(cx3, [2])
    ring, tring = cx3.ring, red.dst.ring
    for g in gl_generators(ring, 3)[:6]:
        gt = Mat(tring, [[tring.el(ring.payload(x) % 2) for x in row] for row in g.rows])
        ps = cx3.vertex_permutation(g)
        pt = red.dst.vertex_permutation(gt)
        assert all(red.vertex_map[ps[i]] == pt[red.vertex_map[i]] for i in range(len(ps)))


def test_reduction_unsupported_quotient(built):
    cx2 = built.complex("Z/4", 2)
    with pytest.raises(ValueError):
        reduction_map(cx2, [1])  # unit ideal: zero ring


def test_congruence_generators():
    z4 = make_ring(RingSpec.modular(4))
    gens = congruence_generators(z4, 2, [2])
    assert len(gens) == 15  # |I|^4 - identity, all invertible since I <= J
    ident = Mat.identity(z4, 2)
    for g in gens:
        assert g.is_invertible()
        assert all(
            (g.rows[i][j] - ident.rows[i][j]) % 2 == 0 for i in range(2) for j in range(2)
        )


def test_export_is_deterministic(built):
    z4 = make_ring(RingSpec.modular(4))
    a = build_tits_complex(z4, 2).export_text()
    b = build_tits_complex(z4, 2).export_text()
    assert a == b
    doc = built.complex("F2", 3).export_document()
    assert doc["schema_version"] == 1
    assert doc["f_vector"] == [14, 21]
    assert len(doc["vertices"]) == 14
