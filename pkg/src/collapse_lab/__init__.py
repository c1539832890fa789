"""Collapsibility of simplicial complexes built from hypergraphs."""
from .collapse import (
    CollapseCertificate,
    CollapseStep,
    Undecided,
    apply_collapse,
    collapsibility,
    free_faces,
    greedy_collapse,
    is_d_collapsible,
    verify_certificate,
)
from .complex import (
    SimplicialComplex,
    deletion,
    euler_characteristic,
    is_face,
    link,
    make_complex,
    recognize_boundary_of_cross_polytope,
    recognize_boundary_of_simplex,
)
from .extremal import (
    SetPairSystem,
    check_system,
    frankl_kalai_witness,
    max_system_search,
    verify_extremal_complexes,
)
from .hypergraph import (
    Hypergraph,
    complete_r_partite,
    complete_uniform,
    cov_complex,
    covering_number,
    disjointness_graph,
    family_h1,
    family_h2,
    independence_complex,
    int_complex,
)
from .mes import d_of_ordering, d_prime, k_graph, mes, theorem_bounds

__version__ = "0.1.0"
