#!/usr/bin/env python3
# Building the flag complex of a finite ring: vertices are free-and-cofree
# summands of R^n, simplices are chains in the cofree order.  Includes the
# rank filtration, links, the reduction map to a quotient ring, and the
# deterministic export format.

import json

from titscomplex import (
    build_filtration,
    build_tits_complex,
    elementary_matrix,
    make_ring,
    parse_ring_spec,
    reduction_map,
)

f2 = make_ring(parse_ring_spec("F2"))
z4 = make_ring(parse_ring_spec("Z/4"))

# Over a field this is the classical building: for F2, n = 3 we get the
# 14 vertices (7 lines, 7 planes) and 21 edges of the Heawood graph.
cx = build_tits_complex(f2, 3)
print("T_3(F2): f-vector", cx.f_vector, "dimension", cx.dim)

# Over Z/4 the complex is strictly larger than the field case.
cx34 = build_tits_complex(z4, 3)
print("T_3(Z/4): f-vector", cx34.f_vector)
print("every simplex extends to a facet (purity):", cx34.is_pure())
print("included-but-not-cofree pairs observed:", cx34.included_not_cofree)

# The rank filtration keeps only vertices of small rank; at rank 1 the
# complex is a discrete set of lines.
print("T_(3,1)(Z/4):", build_filtration(z4, 3, 1).f_vector)
print("T_(4,2)(Z/4):", build_filtration(z4, 4, 2).f_vector)  # a large graph

# Links of vertices look like smaller complexes of the same kind: the link
# of a plane in T_3 is the set of lines it contains.
plane = next(i for i, s in enumerate(cx.vertices) if s.rank == 2)
link, star = cx.link_and_star((plane,))
print("link of a plane in T_3(F2):", link.f_vector)

# GL_n acts simplicially; elementary matrices act through vertex permutations.
g = elementary_matrix(f2, 3, 0, 1, f2.one)
print("e_01(1) permutes the 14 vertices as", cx.vertex_permutation(g))

# Reducing mod an ideal gives a simplicial surjection downstairs.
red = reduction_map(cx34, [2])   # Z/4 -> Z/2
print("reduction T_3(Z/4) -> T_3(Z/2): vertices", len(red.src.vertices), "->",
      len(red.dst.vertices), "| simplicial:", red.is_simplicial(),
      "| onto:", red.is_surjective_on_vertices())

# The export document is JSON-able and byte-stable across runs.
doc = build_tits_complex(z4, 2).export_document()
print(json.dumps(doc, sort_keys=True)[:120], "...")
