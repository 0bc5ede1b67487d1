import logging
import math
from collections.abc import Iterable, Sequence
from typing import Any

from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport, CheckStatus

logger = logging.getLogger(__name__)

CHECK_TOLERANCES: dict[str, float] = {
    "first_normal_contained": 1e-6,
    "parallel_subbundle": 1e-5,
    "curvature_invariant": 1e-9,
    "totally_geodesic": 1e-4,
    "jacobi_containment": 1e-4,
    "tangent_preservation": 1e-4,
    "holonomy_lemma": 1e-4,
    "dimension": 0.5,
    "space_form_redundancy": 1e-9,
}
"""
Unscaled tolerance of every named check.
"""


def check_tolerance(name: str, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    return config.check_tol(CHECK_TOLERANCES[name])


def classify(residual: float, tol: float, config: NumericsConfig = DEFAULT_CONFIG) -> CheckStatus:
    if residual < tol:
        return CheckStatus.PASS

    if residual > config.fail_factor * tol or math.isnan(residual):
        return CheckStatus.FAIL

    return CheckStatus.INCONCLUSIVE


def make_report(
    name: str,
    samples: Iterable[tuple[Any, float]],
    config: NumericsConfig = DEFAULT_CONFIG,
    tol: float | None = None,
    details: dict | None = None,
    trace: Sequence[tuple[float, float]] | None = None,
) -> CheckReport:
    """
    Reduce ``(location, residual)`` samples to the worst one.

    Ties keep the first sample in iteration order, so callers iterate grids in
    lexicographic order to make reports deterministic.
    """
    tol = check_tolerance(name, config) if tol is None else tol
    worst_location: Any = None
    worst = 0.0
    for location, residual in samples:
        value = float("inf") if math.isnan(residual) else float(residual)
        if worst_location is None or value > worst:
            worst, worst_location = value, location

    status = classify(worst, tol, config)
    report = CheckReport(
        name=name,
        residual=worst,
        tol=tol,
        passed=worst < tol,
        status=status,
        location=None if worst_location is None else format_location(worst_location),
        details=details or {},
        trace=list(trace or []),
    )
    log = logger.info if status is CheckStatus.PASS else logger.warning
    log("%s: residual %.3e (tol %.1e) -> %s", name, worst, tol, status.value.upper())
    return report


def format_location(location: Any) -> str:
    if isinstance(location, str):
        return location

    try:
        values = [float(v) for v in location]
    except TypeError:
        return str(location)

    return "(" + ", ".join(f"{v:.6g}" for v in values) + ")"


def with_tolerance(
    report: CheckReport, tol: float, config: NumericsConfig = DEFAULT_CONFIG
) -> CheckReport:
    """
    Re-classify ``report`` against an unscaled override tolerance.
    """
    tol = config.check_tol(tol)
    return report.model_copy(
        update={
            "tol": tol,
            "passed": report.residual < tol,
            "status": classify(report.residual, tol, config),
        }
    )


def error_report(
    name: str, error: Exception, config: NumericsConfig = DEFAULT_CONFIG
) -> CheckReport:
    """
    A FAIL report for a check that could not be evaluated.
    """
    logger.error("%s could not be evaluated: %s", name, error)
    return CheckReport(
        name=name,
        residual=float("inf"),
        tol=check_tolerance(name, config),
        passed=False,
        status=CheckStatus.FAIL,
        details={"error": f"{type(error).__name__}: {error}"},
    )
