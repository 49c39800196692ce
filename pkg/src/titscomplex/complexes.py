"""The Tits complex of a finite ring: flags of free-and-cofree summands.

Vertices are the summands of rank 1..m (m = n-1 for the full complex, lower
for the rank filtration), ordered by (rank, fingerprint).  A d-simplex is a
chain of d+1 vertices under the cofree order; since ranks are strictly
increasing along a chain, listing vertices by rank gives every simplex one
canonical orientation and no per-simplex sign choices survive.

The order relation is computed honestly: for every inclusion of member sets
the quotient is tested for freeness.  Inclusions that fail the test would be
counted in `included_not_cofree` (none have ever been observed over the
supported rings; the counter exists to notice if that ever changes).
"""

from __future__ import annotations

import itertools
import json

from .rings import DEFAULT_BUDGET, Ring, check_budget, ideal_closure, make_ring, quotient_spec
from .linalg import Mat, Summand, quotient_free_rank_members
from .grassmann import SummandCatalog, grassmannian_size_formula


class TitsComplex:
    """Simplicial complex of good flags, with vertices of rank <= max_rank."""

    def __init__(self, ring: Ring, n: int, max_rank: int, vertices, simplices, included_not_cofree: int):
        self.ring = ring
        self.n = n
        self.max_rank = max_rank
        self.vertices = vertices  # list[Summand], sorted by (rank, key)
        self.vindex = {s.members: i for i, s in enumerate(vertices)}
        self.simplices = simplices  # simplices[d] = sorted list of vertex-index tuples
        self.included_not_cofree = included_not_cofree
        self.simplex_pos = [
            {t: i for i, t in enumerate(level)} for level in simplices
        ]
        self._perm_cache: dict = {}

    @property
    def dim(self) -> int:
        """Dimension of the complex (-1 when empty)."""
        return len(self.simplices) - 1

    @property
    def f_vector(self) -> list[int]:
        return [len(level) for level in self.simplices]

    def facets(self):
        return self.simplices[-1] if self.simplices else []

    def vertex_of_members(self, members) -> int:
        return self.vindex[members]

    def has_simplex(self, t) -> bool:
        d = len(t) - 1
        return 0 <= d < len(self.simplices) and t in self.simplex_pos[d]

    def is_pure(self) -> bool:
        """Every simplex is a face of some top-dimensional simplex."""
        if not self.simplices:
            return True
        covered = set()
        for f in self.simplices[-1]:
            for size in range(1, len(f) + 1):
                covered.update(itertools.combinations(f, size))
        return all(t in covered for level in self.simplices for t in level)

    # -- group action -------------------------------------------------------
    def vertex_permutation(self, g: Mat) -> tuple:
        """Permutation of vertex indices induced by V -> gV."""
        key = g.rows
        got = self._perm_cache.get(key)
        if got is not None:
            return got
        ring = self.ring
        perm = []
        for s in self.vertices:
            image = frozenset(g.apply(v) for v in s.members)
            j = self.vindex.get(image)
            if j is None:
                raise ValueError("matrix does not preserve the vertex set (is it invertible?)")
            perm.append(j)
        perm = tuple(perm)
        self._perm_cache[key] = perm
        return perm

    def simplex_permutation(self, g: Mat, d: int) -> list[int]:
        """Permutation of the d-simplex list induced by g (rank order is
        preserved, so no signs appear)."""
        vperm = self.vertex_permutation(g)
        pos = self.simplex_pos[d]
        out = []
        for t in self.simplices[d]:
            image = tuple(sorted((vperm[i] for i in t)))
            out.append(pos[image])
        return out

    # -- link and star ------------------------------------------------------
    def link_and_star(self, simplex) -> tuple["Subcomplex", "Subcomplex"]:
        simplex = tuple(simplex)
        if not self.has_simplex(simplex):
            raise ValueError(f"simplex {simplex} not in complex")
        sset = set(simplex)
        star_simplices = [[] for _ in self.simplices]
        link_simplices = [[] for _ in self.simplices]
        for level in self.simplices:
            for t in level:
                union = tuple(sorted(sset | set(t)))
                if self.has_simplex(union):
                    star_simplices[len(t) - 1].append(t)
                    if not (sset & set(t)):
                        link_simplices[len(t) - 1].append(t)
        return (
            Subcomplex(self, _trim(link_simplices)),
            Subcomplex(self, _trim(star_simplices)),
        )

    # -- export -------------------------------------------------------------
    def export_document(self) -> dict:
        """Deterministic JSON-able description (vertices with preferred
        bases, simplices as index tuples)."""
        return {
            "schema_version": 1,
            "ring": self.ring.spec.label,
            "n": self.n,
            "max_rank": self.max_rank,
            "f_vector": self.f_vector,
            "included_not_cofree": self.included_not_cofree,
            "vertices": [
                {"rank": s.rank, "basis": [list(_jsonable(p) for p in self.ring.vec_payloads(v))
                                            for v in s.preferred_basis]}
                for s in self.vertices
            ],
            "simplices": {str(d): [list(t) for t in level] for d, level in enumerate(self.simplices)},
        }

    def export_text(self) -> str:
        return json.dumps(self.export_document(), indent=1, sort_keys=True) + "\n"

    def __repr__(self):
        return (
            f"TitsComplex({self.ring.spec.label}, n={self.n}, max_rank={self.max_rank}, "
            f"f={self.f_vector})"
        )


def _jsonable(payload):
    if isinstance(payload, tuple):
        return [_jsonable(x) for x in payload]
    return payload


def _trim(levels):
    while levels and not levels[-1]:
        levels.pop()
    return levels


class Subcomplex:
    """A subcomplex of a TitsComplex, sharing the parent's vertex indexing."""

    def __init__(self, parent: TitsComplex, simplices):
        self.parent = parent
        self.simplices = simplices

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def f_vector(self) -> list[int]:
        return [len(level) for level in self.simplices]

    def vertex_set(self):
        return sorted({i for level in self.simplices for t in level for i in t})


def build_filtration(
    spec_or_ring, n: int, m: int, budget: int | None = DEFAULT_BUDGET, catalog: SummandCatalog | None = None
) -> TitsComplex:
    """Full subcomplex on the summands of rank at most m (1 <= m <= n-1)."""
    if not (1 <= m <= n - 1):
        raise ValueError(f"filtration rank must satisfy 1 <= m <= n-1, got m={m}, n={n}")
    ring = spec_or_ring if isinstance(spec_or_ring, Ring) else make_ring(spec_or_ring)
    spec = ring.spec
    est = sum(grassmannian_size_formula(spec, n, k) for k in range(1, m + 1))
    check_budget(est, budget, f"vertices of the rank-{m} Tits complex of {spec.label}^{n}")
    if catalog is None:
        catalog = SummandCatalog(ring, n, budget)
    vertices: list[Summand] = []
    for k in range(1, m + 1):
        vertices.extend(catalog.grassmannian(k))
    nverts = len(vertices)

    # honest order relation: subset test, then cofreeness of the step
    upsets: list[list[int]] = [[] for _ in range(nverts)]
    related: list[set] = [set() for _ in range(nverts)]
    included_not_cofree = 0
    for i, v in enumerate(vertices):
        for j in range(i + 1, nverts):
            w = vertices[j]
            if w.rank <= v.rank:
                continue
            if not v.members <= w.members:
                continue
            gap = quotient_free_rank_members(ring, n, w.key, v.members, budget)
            if gap == w.rank - v.rank:
                upsets[i].append(j)
                related[i].add(j)
            else:
                included_not_cofree += 1

    # chains of the relation; extension only within the set of vertices
    # comparable to everything already chosen, so pairwise comparability is
    # enforced rather than assumed
    simplices: list[list[tuple]] = []

    def grow(chain, allowed):
        d = len(chain) - 1
        while len(simplices) <= d:
            simplices.append([])
        simplices[d].append(tuple(chain))
        for j in allowed:
            grow(chain + [j], [x for x in allowed if x in related[j]])

    for i in range(nverts):
        grow([i], upsets[i])
    for level in simplices:
        level.sort()
    return TitsComplex(ring, n, m, vertices, simplices, included_not_cofree)


def build_tits_complex(
    spec_or_ring, n: int, budget: int | None = DEFAULT_BUDGET, catalog: SummandCatalog | None = None
) -> TitsComplex:
    """The full Tits complex (dimension n-2); empty when n = 1."""
    ring = spec_or_ring if isinstance(spec_or_ring, Ring) else make_ring(spec_or_ring)
    if n == 1:
        return TitsComplex(ring, 1, 0, [], [], 0)
    return build_filtration(ring, n, n - 1, budget, catalog)


# ---------------------------------------------------------------------------
# group generators


def elementary_matrix(ring: Ring, n: int, i: int, j: int, a: int) -> Mat:
    rows = [[ring.one if r == c else ring.zero for c in range(n)] for r in range(n)]
    rows[i][j] = a
    return Mat(ring, rows)


def unit_scaling(ring: Ring, n: int, u: int, pos: int = 0) -> Mat:
    rows = [[ring.one if r == c else ring.zero for c in range(n)] for r in range(n)]
    rows[pos][pos] = u
    return Mat(ring, rows)


def gl_generators(ring: Ring, n: int) -> list[Mat]:
    """Generators of GL_n(R): elementary matrices over additive generators
    of R, plus unit scalings in the first slot (GL_n = GL_1 * E_n over
    rings with stable range 2, which covers all finite rings)."""
    gens = []
    for a in ring.additive_generators():
        for i in range(n):
            for j in range(n):
                if i != j:
                    gens.append(elementary_matrix(ring, n, i, j, a))
    for u in sorted(ring.units):
        if u != ring.one:
            gens.append(unit_scaling(ring, n, u))
    return gens


def congruence_generators(
    ring: Ring, n: int, ideal_gen_payloads, budget: int | None = DEFAULT_BUDGET
) -> list[Mat]:
    """The principal congruence subgroup of level I, as an explicit matrix list.

    Realised as id + Mat_n(I) intersected with the invertibles; when I sits
    inside the Jacobson radical the intersection is everything.
    """
    gens_idx = [ring.el(p) for p in ideal_gen_payloads]
    ideal = sorted(ideal_closure(ring, gens_idx))
    check_budget(len(ideal) ** (n * n), budget, "congruence subgroup enumeration")
    out = []
    ident = Mat.identity(ring, n)
    for entries in itertools.product(ideal, repeat=n * n):
        rows = []
        it = iter(entries)
        for r in range(n):
            row = []
            for c in range(n):
                x = next(it)
                if r == c:
                    x = ring.add[ring.one][x]
                row.append(x)
            rows.append(row)
        g = Mat(ring, rows)
        if g.rows == ident.rows:
            continue
        if g.is_invertible():
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# functoriality: reduction along R -> R/I


class SimplicialReduction:
    """The simplicial map T_n(R) -> T_n(R/I) induced by entrywise reduction."""

    def __init__(self, src: TitsComplex, dst: TitsComplex, vertex_map):
        self.src = src
        self.dst = dst
        self.vertex_map = vertex_map  # list: src vertex index -> dst vertex index

    def simplex_image(self, t) -> tuple:
        """Image of a simplex; ranks are preserved so images never degenerate."""
        vm = self.vertex_map
        return tuple(sorted(vm[i] for i in t))

    def is_simplicial(self) -> bool:
        return all(
            self.dst.has_simplex(self.simplex_image(t))
            for level in self.src.simplices
            for t in level
        )

    def is_surjective_on_vertices(self) -> bool:
        return set(self.vertex_map) == set(range(len(self.dst.vertices)))


def reduction_map(
    src: TitsComplex, ideal_gen_payloads, budget: int | None = DEFAULT_BUDGET
) -> SimplicialReduction:
    """Reduce the complex along R -> R/I for an ideal given by generators."""
    ring = src.ring
    gen_idx = [ring.el(p) for p in ideal_gen_payloads]
    tspec, reduce_payload = quotient_spec(ring.spec, ring, gen_idx)
    tring = make_ring(tspec)
    dst = build_tits_complex(tring, src.n, budget)
    vm = []
    for s in src.vertices:
        members = frozenset(
            tuple(tring.el(reduce_payload(ring.payload(x))) for x in v) for v in s.members
        )
        j = dst.vindex.get(members)
        if j is None:
            raise RuntimeError("reduction of a summand is not a vertex downstairs (construction bug)")
        vm.append(j)
    return SimplicialReduction(src, dst, vm)
