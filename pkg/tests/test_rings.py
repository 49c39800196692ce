import itertools
import random

import pytest

from titscomplex import (
    RingSpec,
    enumerate_elements,
    ideal_closure,
    make_ring,
    parse_ring_spec,
)
from titscomplex.rings import BudgetExceeded

ALL_SPECS = ["Z/4", "Z/6", "Z/8", "Z/9", "Z/10", "Z/12", "F2", "F7", "F2[e]^2", "F2[e]^3", "F3[e]^2", "Z/2xZ/3", "Z/2xZ/9"]


# -- brute-force oracles ------------------------------------------------------

def all_ideals(ring):
    """Every ideal of the ring, by closure of principal-ideal sums."""
    principal = {}
    for a in range(ring.card):
        principal[a] = frozenset(ring.mul[r][a] for r in range(ring.card))
    # principal sets are closed under addition already? no: {r*a} is closed
    # under scaling; close under addition to get the ideal (a)
    def additive_closure(gens):
        out = {ring.zero}
        frontier = list(gens)
        out.update(frontier)
        while frontier:
            new = []
            for x in frontier:
                for y in list(out):
                    z = ring.add[x][y]
                    if z not in out:
                        out.add(z)
                        new.append(z)
            frontier = new
        return frozenset(out)

    principal = {a: additive_closure(principal[a]) for a in range(ring.card)}
    ideals = {frozenset({ring.zero})}
    frontier = set(principal.values())
    ideals |= frontier
    while frontier:
        new = set()
        for ideal in frontier:
            for a in range(ring.card):
                bigger = additive_closure(ideal | principal[a])
                if bigger not in ideals:
                    new.add(bigger)
        ideals |= new
        frontier = new
    return ideals


def maximal_ideals(ring):
    proper = [i for i in all_ideals(ring) if len(i) < ring.card]
    return [i for i in proper if not any(i < j for j in proper)]


def test_enumeration_order_examples():
    assert [e.payload for e in enumerate_elements(RingSpec.modular(4))] == [0, 1, 2, 3]
    # 0, 1, x, 1+x in coefficient tuples, low degree first
    assert [e.payload for e in enumerate_elements(RingSpec.truncated_poly(2, 2))] == [
        (0, 0), (1, 0), (0, 1), (1, 1),
    ]
    prod = parse_ring_spec("Z/2xZ/3")
    assert [e.payload for e in enumerate_elements(prod)] == [
        (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2),
    ]


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_elements(RingSpec.modular(50), budget=10)


def test_arithmetic_examples():
    r6 = make_ring(RingSpec.modular(6))
    assert (r6.element(4) * r6.element(5)).payload == 2
    rp = make_ring(RingSpec.truncated_poly(2, 2))
    x = rp.element((0, 1))
    assert (x * x).payload == (0, 0)
    for spec in [RingSpec.modular(6), RingSpec.truncated_poly(2, 2)]:
        ring = make_ring(spec)
        zero = ring.element(ring.payload(ring.zero))
        for a in ring.elements():
            assert a + zero == a


def test_spec_mismatch_raises():
    a = make_ring(RingSpec.modular(4)).element(1)
    b = make_ring(RingSpec.modular(6)).element(1)
    with pytest.raises(ValueError):
        a + b


def test_unit_inverse_examples():
    r4 = make_ring(RingSpec.modular(4))
    assert r4.element(3).inverse() == r4.element(3)
    r6 = make_ring(RingSpec.modular(6))
    assert r6.element(2).inverse() is None
    rp = make_ring(RingSpec.truncated_poly(2, 2))
    assert rp.element((1, 1)).inverse() == rp.element((1, 1))


def test_unit_inverse_exhaustive_oracle():
    for label in ALL_SPECS:
        ring = make_ring(parse_ring_spec(label))
        for a in range(ring.card):
            brute = [b for b in range(ring.card) if ring.mul[a][b] == ring.one]
            if brute:
                assert ring.inv[a] in brute
            else:
                assert ring.inv[a] is None


def test_units_equal_complement_of_maximal_ideals():
    for label in ["Z/4", "Z/6", "Z/12", "F7", "F2[e]^2", "Z/2xZ/3"]:
        ring = make_ring(parse_ring_spec(label))
        union = set()
        for ideal in maximal_ideals(ring):
            union |= ideal
        assert ring.units == set(range(ring.card)) - union


def test_radical_against_ideal_lattice():
    for label in ALL_SPECS:
        ring = make_ring(parse_ring_spec(label))
        rad = frozenset.intersection(*map(frozenset, maximal_ideals(ring)))
        assert ring.radical.elements == rad, label


def test_radical_examples():
    r12 = make_ring(RingSpec.modular(12))
    assert list(r12.radical.generators) == [6]
    assert r12.radical.size == 2
    assert list(r12.radical.residue_field_orders) == [2, 3]
    r4 = make_ring(RingSpec.modular(4))
    assert sorted(r4.payload(i) for i in r4.radical.elements) == [0, 2]
    assert list(r4.radical.residue_field_orders) == [2]
    r7 = make_ring(RingSpec.prime_field(7))
    assert r7.radical.elements == {r7.zero}
    assert list(r7.radical.residue_field_orders) == [7]


def test_cardinality_factorisation():
    for label in ALL_SPECS:
        ring = make_ring(parse_ring_spec(label))
        prod = 1
        for q in ring.radical.residue_field_orders:
            prod *= q
        assert ring.card == ring.radical.size * prod


def test_one_plus_radical_is_unit():
    for label in ALL_SPECS:
        ring = make_ring(parse_ring_spec(label))
        for j in ring.radical.elements:
            assert ring.add[ring.one][j] in ring.units


def test_ring_axioms():
    random.seed(7)
    for label in ALL_SPECS:
        ring = make_ring(parse_ring_spec(label))
        if ring.card <= 16:
            triples = itertools.product(range(ring.card), repeat=3)
        else:
            triples = (
                tuple(random.randrange(ring.card) for _ in range(3)) for _ in range(500)
            )
        add, mul = ring.add, ring.mul
        for a, b, c in triples:
            assert add[a][b] == add[b][a]
            assert mul[a][b] == mul[b][a]
            assert add[add[a][b]][c] == add[a][add[b][c]]
            assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
            assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]


def test_parse_roundtrip_and_errors():
    for label in ALL_SPECS:
        spec = parse_ring_spec(label)
        assert parse_ring_spec(spec.label) == spec
    assert parse_ring_spec("F2[e]").params == (2, 2)
    for bad in ["", "Z/1", "F4", "F6[e]^2", "Q8", "Z/x", "F2[e]^0"]:
        with pytest.raises(ValueError):
            parse_ring_spec(bad)


def test_ideal_closure_examples():
    r6 = make_ring(RingSpec.modular(6))
    assert ideal_closure(r6, [r6.el(2), r6.el(3)]) == frozenset(range(6))
    assert ideal_closure(r6, [r6.el(2)]) == frozenset({0, 2, 4})
