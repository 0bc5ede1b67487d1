from codim.reduction.envelope import (
    Envelope,
    build_envelope,
    check_dimension,
    check_totally_geodesic,
)
from codim.reduction.holonomy import (
    HomotopySheet,
    holonomy_derivative_integral,
    holonomy_direct,
    holonomy_fd,
    holonomy_integral_matrix,
    random_smooth_sheet,
    verify_holonomy_lemma,
)
from codim.reduction.hypotheses import (
    check_bundle_curvature_invariant,
    check_curvature_invariant,
    check_first_normal_contained,
    check_parallel_subbundle,
    verify_space_form_redundancy,
)
from codim.reduction.jacobi import check_jacobi_containment, jacobi_propagate, solve_jacobi
from codim.reduction.reports import CHECK_TOLERANCES, make_report
from codim.reduction.tangent import (
    check_tangent_preservation,
    default_loops,
    loop_curve,
    sheet_from_envelope,
)

__all__ = [
    "CHECK_TOLERANCES",
    "Envelope",
    "HomotopySheet",
    "build_envelope",
    "check_bundle_curvature_invariant",
    "check_curvature_invariant",
    "check_dimension",
    "check_first_normal_contained",
    "check_jacobi_containment",
    "check_parallel_subbundle",
    "check_tangent_preservation",
    "check_totally_geodesic",
    "default_loops",
    "holonomy_derivative_integral",
    "holonomy_direct",
    "holonomy_fd",
    "holonomy_integral_matrix",
    "jacobi_propagate",
    "loop_curve",
    "make_report",
    "random_smooth_sheet",
    "sheet_from_envelope",
    "solve_jacobi",
    "verify_holonomy_lemma",
    "verify_space_form_redundancy",
]
