"""Spectral analysis of principal eigenvector ratios under edge edits.

Builds structured graph families, computes principal eigenpairs and the
ratio gamma = q_max / q_min of the top eigenvector, certifies ratio bounds
after single-edge edits via an eigenbasis fixed-point scheme, and checks a
battery of spectral inequalities numerically.
"""

from .bounds import (
    CHECK_NAMES,
    BoundCheck,
    check_alon_milman,
    check_cgn,
    check_diameter_change,
    check_distance_ratio,
    check_exponential_ring,
    check_expander_corollary,
    check_ratio_diameter,
    check_regular_diameter,
    check_removal_poly,
)
from .chebyshev import ChebKind, LogReal, cheb_explicit, cheb_log_lower_bound, cheb_recurrence
from .errors import PerronLabError
from .families import (
    BuiltGraph,
    FamilySpec,
    RingDescriptor,
    build_family,
    canonical_name,
    cartesian_product,
    complete,
    cycle,
    edgeless,
    kite,
    lexicographic_product,
    parse_family,
    path,
    petersen,
    random_regular,
    ring,
    ring_plus_e,
)
from .graph import Edge, Graph, add_edge, distance, is_bridge, read_edge_list, remove_edge, write_edge_list
from .kernels import BACKEND
from .perturbation import (
    PerturbationReport,
    PerturbationSystem,
    assemble_xtilde,
    build_system,
    certify_ratio,
    gap_threshold,
    rotated_frame,
    solve_p,
)
from .spectral import (
    Eigenpair,
    RatioReport,
    SpectrumSummary,
    algebraic_connectivity,
    dense_spectrum,
    predicted_lex_gap,
    principal_eigenpair,
    ratio,
    second_eigenvalue,
    spectrum_summary,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundCheck",
    "BuiltGraph",
    "CHECK_NAMES",
    "ChebKind",
    "Edge",
    "Eigenpair",
    "FamilySpec",
    "Graph",
    "LogReal",
    "PerronLabError",
    "PerturbationReport",
    "PerturbationSystem",
    "RatioReport",
    "RingDescriptor",
    "SpectrumSummary",
    "add_edge",
    "algebraic_connectivity",
    "assemble_xtilde",
    "build_family",
    "build_system",
    "canonical_name",
    "cartesian_product",
    "certify_ratio",
    "cheb_explicit",
    "cheb_log_lower_bound",
    "cheb_recurrence",
    "check_alon_milman",
    "check_cgn",
    "check_diameter_change",
    "check_distance_ratio",
    "check_exponential_ring",
    "check_expander_corollary",
    "check_ratio_diameter",
    "check_regular_diameter",
    "check_removal_poly",
    "complete",
    "cycle",
    "dense_spectrum",
    "distance",
    "edgeless",
    "gap_threshold",
    "is_bridge",
    "kite",
    "lexicographic_product",
    "parse_family",
    "path",
    "petersen",
    "predicted_lex_gap",
    "principal_eigenpair",
    "random_regular",
    "ratio",
    "read_edge_list",
    "remove_edge",
    "ring",
    "ring_plus_e",
    "rotated_frame",
    "second_eigenvalue",
    "solve_p",
    "spectrum_summary",
    "write_edge_list",
    "__version__",
]
