"""Execute the checks a scenario requests and assemble the run report."""

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from codim.ambient import TangentVector
from codim.catalog import Geometry, resolve
from codim.exceptions import BaseCodimException, CatalogError, ScenarioError
from codim.geomcore import Subspace
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport, RunReport
from codim.model.scenario import CheckSpec, Scenario
from codim.reduction import (
    Envelope,
    build_envelope,
    check_bundle_curvature_invariant,
    check_dimension,
    check_first_normal_contained,
    check_jacobi_containment,
    check_parallel_subbundle,
    check_tangent_preservation,
    check_totally_geodesic,
    default_loops,
    random_smooth_sheet,
    sheet_from_envelope,
    verify_holonomy_lemma,
    verify_space_form_redundancy,
)
from codim.reduction.hypotheses import bundle_sum
from codim.reduction.reports import error_report, with_tolerance
from codim.submanifold import tangent_space

logger = logging.getLogger(__name__)

DISTRIBUTION = "codimpy"


def tool_version() -> str:
    try:
        return version(DISTRIBUTION)
    except PackageNotFoundError:
        return "0.0.0"


@dataclass
class ScenarioRun:
    """
    State shared by the checks of one run. The envelope is built on first use, with
    the reports collected so far as its hypotheses.
    """

    scenario: Scenario
    geometry: Geometry
    config: NumericsConfig
    seed: int
    reports: list[CheckReport] = field(default_factory=list)
    _envelope: Envelope | None = field(default=None, init=False, repr=False)

    @property
    def resolution(self) -> int:
        return self.scenario.grid.resolution

    @property
    def envelope(self) -> Envelope:
        if self._envelope is None:
            grid = self.scenario.grid
            self._envelope = build_envelope(
                self.geometry.immersion,
                self.geometry.bundle,
                epsilon=grid.epsilon,
                resolution=grid.envelope_resolution,
                config=self.config,
                hypotheses=self.reports,
            )

        return self._envelope

    def base_parameter(self, spec: CheckSpec) -> np.ndarray:
        F = self.geometry.immersion
        if "at" in spec.options:
            return F.params(spec.options["at"])

        if not F.param_dim:
            return np.zeros(0)

        return np.array([(a + b) / 2 for a, b in F.domain])


CheckRunner = Callable[[ScenarioRun, CheckSpec], CheckReport]


def _first_normal(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    F = run.geometry.immersion
    return check_first_normal_contained(
        F, run.geometry.bundle, grid=F.grid(run.resolution), config=run.config
    )


def _parallel(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    return check_parallel_subbundle(
        run.geometry.immersion, run.geometry.bundle, config=run.config, resolution=run.resolution
    )


def _curvature(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    F = run.geometry.immersion
    return check_bundle_curvature_invariant(
        F, run.geometry.bundle, grid=F.grid(run.resolution), config=run.config
    )


def _totally_geodesic(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    pairs = int(spec.options.get("random_pairs", 3))
    return check_totally_geodesic(
        run.envelope, config=run.config, seed=run.seed, random_pairs=pairs
    )


def _dimension(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    return check_dimension(run.envelope, config=run.config)


def _tangent(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    env = run.envelope
    grid = run.scenario.grid
    loops = default_loops(env, count=grid.loops)
    loops.extend(np.array(corners, dtype=float) for corners in spec.options.get("loops", []))
    return check_tangent_preservation(
        env, loops=loops, config=run.config, samples_per_side=grid.samples_per_side
    )


def _jacobi(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    """
    Jacobi fields along the normal geodesic through ``F(u0)`` in the direction of the
    ``direction``-th orthonormal vector of ``V``, started in ``T M ⊕ V``. With ``split``
    the values start in ``T M`` and the derivatives in ``V``.
    """
    F, V = run.geometry.immersion, run.geometry.bundle
    u0 = run.base_parameter(spec)
    index = int(spec.options.get("direction", 0))
    frame = V.orthonormal_frame(u0)
    if not 0 <= index < len(frame):
        raise ScenarioError(f"jacobi_containment: direction {index} outside rank {len(frame)}.")

    parts: dict[str, Subspace] = {}
    if spec.options.get("split", False):
        parts = {"values_from": tangent_space(F, u0), "derivatives_from": V.subspace(u0)}

    return check_jacobi_containment(
        run.geometry.space,
        TangentVector(F.point(u0), frame[index]),
        bundle_sum(F, V, u0),
        config=run.config,
        t_max=float(spec.options.get("t_max", 2.0)),
        trials=int(spec.options.get("trials", 20)),
        seed=run.seed,
        **parts,
    )


def _holonomy(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    samples = run.scenario.grid.sheet_samples
    kind = spec.options.get("sheet", "envelope")
    if kind == "random":
        sheet = random_smooth_sheet(
            run.geometry.space,
            p=run.geometry.immersion.point(run.base_parameter(spec)),
            seed=run.seed,
            num_s=samples,
            num_t=samples,
        )
    elif kind == "envelope":
        sheet = sheet_from_envelope(run.envelope, num_s=samples, num_t=samples)
    else:
        raise ScenarioError(f"holonomy_lemma: unknown sheet '{kind}' (envelope, random).")

    return verify_holonomy_lemma(sheet, config=run.config)


def _space_form(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    trials = int(spec.options.get("trials", 20))
    return verify_space_form_redundancy(
        run.geometry.space, seed=run.seed, trials=trials, config=run.config
    )


CHECKS: dict[str, CheckRunner] = {
    "first_normal_contained": _first_normal,
    "parallel_subbundle": _parallel,
    "curvature_invariant": _curvature,
    "totally_geodesic": _totally_geodesic,
    "dimension": _dimension,
    "tangent_preservation": _tangent,
    "jacobi_containment": _jacobi,
    "holonomy_lemma": _holonomy,
    "space_form_redundancy": _space_form,
}


def run_check(run: ScenarioRun, spec: CheckSpec) -> CheckReport:
    logger.info("Running %s on %s", spec.name, run.scenario.name)
    try:
        report = CHECKS[spec.name](run, spec)
    except (ScenarioError, CatalogError):
        raise
    except BaseCodimException as err:
        report = error_report(spec.name, err, config=run.config)

    if spec.tol is not None:
        report = with_tolerance(report, spec.tol, config=run.config)

    return report.with_expectation(spec.expect)


def run_scenario(
    scenario: Scenario,
    config: NumericsConfig = DEFAULT_CONFIG,
    seed: int | None = None,
) -> RunReport:
    """
    Resolve the scenario and execute its checks in declared order.

    The scenario's ``tol_scale`` multiplies the one in ``config``. Numerical failures
    inside a check become FAIL reports; scenario and catalog errors propagate.

    Raises:
        :class:`~codim.exceptions.ScenarioError`
        :class:`~codim.exceptions.CatalogError`
    """
    started = time.perf_counter()
    config = config.scaled(scenario.tol_scale)
    seed = scenario.seed if seed is None else seed
    try:
        geometry = resolve(scenario, config=config)
    except (ScenarioError, CatalogError):
        raise
    except BaseCodimException as err:
        raise ScenarioError(f"Cannot build the geometry: {err}") from err

    run = ScenarioRun(scenario, geometry, config, seed)
    for spec in scenario.checks:
        run.reports.append(run_check(run, spec))

    echo = scenario.model_dump(mode="json")
    echo["seed"] = seed
    report = RunReport.from_checks(
        echo,
        run.reports,
        seed,
        runtime_ms=(time.perf_counter() - started) * 1000,
        version=tool_version(),
    )
    logger.info("Scenario %s finished: %s", scenario.name, report.verdict.value)
    return report
