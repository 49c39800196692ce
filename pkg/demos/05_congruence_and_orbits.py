#!/usr/bin/env python3
# Representation-flavoured computations: the kernel of the reduction map,
# congruence-subgroup invariants, and orbit/commutant counts for pairs of
# lines, all over rationals but with exact integer arithmetic underneath.

from titscomplex import (
    build_tits_complex,
    chain_complex,
    congruence_generators,
    fixed_subspace_dim,
    induced_top_map,
    make_ring,
    p1_orbit_and_commutant,
    parse_ring_spec,
    reduction_map,
    steinberg_rank,
)

z4 = make_ring(parse_ring_spec("Z/4"))
cx = build_tits_complex(z4, 2)
cc = chain_complex(cx)

# The reduction to the residue field induces a map on top homology whose
# kernel is nonzero and proper: the top homology is never irreducible away
# from fields.
red = reduction_map(cx, [2])
itm = induced_top_map(red, cc, chain_complex(red.dst))
print("induced map to T_2(Z/2): rank", itm.rank, "of", itm.src_cycle_rank,
      "| kernel rank", itm.kernel_rank)

# The fixed space of a principal congruence subgroup matches the rank of the
# complex over the quotient ring.
for label, ideal in [("Z/4", 2), ("Z/8", 2), ("Z/8", 4)]:
    ring = make_ring(parse_ring_spec(label))
    cxr = build_tits_complex(ring, 2)
    ccr = chain_complex(cxr)
    gens = congruence_generators(ring, 2, [ideal])
    perms = [cxr.simplex_permutation(g, 0) for g in gens]
    dim = fixed_subspace_dim(ccr, 0, perms)
    m = ring.spec.params[0] // ideal if ring.spec.kind == "modular" else None
    downstairs = steinberg_rank(parse_ring_spec(f"Z/{ideal}"), 2)
    print(f"{label}, congruence level ({ideal}): invariant dimension {dim} "
          f"(rank over Z/{ideal} is {downstairs})")

# For n = 2 the rank-one summands of R^2 form one orbit, and the number of
# GL_2-orbits on PAIRS of lines counts the summands of the permutation
# module: over a chain ring of length k there are k+1 of them.  The same
# number appears as the dimension of the commutant algebra; the library
# computes the two by different routes (union-find closure vs nullity of the
# commutation system).
for label in ("Z/4", "Z/8", "Z/9", "F5", "F2[e]^3"):
    orbits, commutant = p1_orbit_and_commutant(parse_ring_spec(label))
    print(f"{label}: {orbits} orbits on line pairs, commutant dimension {commutant}")
