"""Flag complexes of free-and-cofree summands over finite commutative rings.

The library builds the simplicial complex of good flags in R^n for a finite
commutative ring R, computes its exact integral homology, and analyses the
top homology (rank recursion, apartment classes, chamber pairings,
congruence invariants, orbit counts).  Everything is exact integer
arithmetic; outputs are deterministic.
"""

from .rings import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    RadicalData,
    Ring,
    RingElement,
    RingSpec,
    enumerate_elements,
    ideal_closure,
    make_ring,
    parse_ring_spec,
)
from .linalg import (
    Mat,
    Summand,
    canonical_fingerprint,
    complete_to_basis,
    determinant,
    is_unimodular,
    quotient_free_rank,
    span_summand,
)
from .grassmann import (
    Flag,
    SummandCatalog,
    enumerate_good_flags,
    enumerate_grassmannian,
    flag_type,
    gaussian_binomial,
    gl_order,
    grassmannian_size_formula,
)
from .complexes import (
    SimplicialReduction,
    Subcomplex,
    TitsComplex,
    build_filtration,
    build_tits_complex,
    congruence_generators,
    elementary_matrix,
    gl_generators,
    reduction_map,
    unit_scaling,
)
from .homology import (
    ChainComplex,
    HomologyResult,
    SparseCols,
    chain_complex,
    fixed_subspace_dim,
    induced_top_map,
    kernel_basis,
    reduced_homology,
    smith_rank_and_divisors,
)
from .steinberg import (
    RankTable,
    SteinbergChain,
    apartment_class,
    apartment_span_rank,
    chamber_map,
    eta_class,
    p1_orbit_and_commutant,
    reverse_ut_facet,
    steinberg_rank,
    steinberg_rank_field,
    table_generate,
    ut_apartment_pairing,
    ut_bases,
)
from .verify import run_verify

__version__ = "0.1.0"
