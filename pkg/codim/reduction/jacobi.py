"""Jacobi fields along geodesics, solved in a parallel frame.

In a parallel orthonormal frame ``E_a(t)`` along ``γ`` the Jacobi equation
``J'' + R̄(J, γ')γ' = 0`` becomes the linear system ``j'' = -K(t) j`` with
``K_ab = ⟨R̄(E_b, γ')γ', E_a⟩``. The frame comes from the model's closed-form
geodesic transport, so only the coordinates are integrated (classical RK4,
vectorized over initial conditions).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from codim.ambient.base import SpaceModel, TangentVector
from codim.geomcore import Subspace, leakage, orthonormalize
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport
from codim.reduction.hypotheses import curvature_invariance_residual
from codim.reduction.reports import make_report

logger = logging.getLogger(__name__)

GENERIC_TIME = 0.37
"""
Fraction of the time range where the span of the propagated fields is measured.
"""


@dataclass
class JacobiSolution:
    """
    Jacobi fields for several initial conditions on a uniform time grid.
    """

    times: np.ndarray
    fields: np.ndarray
    """
    ``J`` in chart coordinates, shape ``(steps + 1, q, chart_dim)``.
    """

    derivatives: np.ndarray
    """
    ``J'`` in chart coordinates, same shape as ``fields``.
    """

    points: np.ndarray


class _JacobiOperator:
    def __init__(self, space: SpaceModel, x: np.ndarray, v: np.ndarray):
        self.space = space
        self.x = x
        self.v = v
        self.initial = space.tangent_space(x)
        self._cache: dict[float, np.ndarray] = {}

    def frame(self, t: float) -> Subspace:
        point = self.space.exp(self.x, self.v, t)
        basis = self.space.geodesic_transport(self.x, self.v, t, self.initial.basis)
        return Subspace(basis, metric=self.space.metric_matrix(point))

    def __call__(self, t: float) -> np.ndarray:
        if t not in self._cache:
            point = self.space.exp(self.x, self.v, t)
            speed = self.space.velocity(self.x, self.v, t)
            frame = self.frame(t)
            columns = [
                frame.coordinates(self.space.curvature(point, e, speed, speed))
                for e in frame.basis
            ]
            self._cache[t] = np.array(columns).T

        return self._cache[t]

    def release(self, *times: float):
        for t in times:
            self._cache.pop(t, None)


def solve_jacobi(
    space: SpaceModel,
    geodesic: TangentVector,
    J0: np.ndarray,
    J0dot: np.ndarray,
    t: float,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> JacobiSolution:
    """
    Propagate the rows of ``J0``/``J0dot`` (initial values and derivatives at ``γ(0)``)
    along ``γ(τ) = exp(τ γ'(0))`` for ``τ ∈ [0, t]``.
    """
    x, v = geodesic.base, geodesic.dir
    J0 = np.atleast_2d(np.asarray(J0, dtype=float))
    J0dot = np.atleast_2d(np.asarray(J0dot, dtype=float))
    K = _JacobiOperator(space, x, v)
    j = np.array([K.initial.coordinates(row) for row in J0])
    jd = np.array([K.initial.coordinates(row) for row in J0dot])
    steps = max(16, math.ceil(config.steps_per_unit * space.norm(x, v) * abs(t) / space.scale))
    h = t / steps
    coords, derivs = [j], [jd]
    for n in range(steps):
        a, mid, b = K(n * h), K((n + 0.5) * h), K((n + 1) * h)
        k1, l1 = jd, -j @ a.T
        k2, l2 = jd + h / 2 * l1, -(j + h / 2 * k1) @ mid.T
        k3, l3 = jd + h / 2 * l2, -(j + h / 2 * k2) @ mid.T
        k4, l4 = jd + h * l3, -(j + h * k3) @ b.T
        j = j + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        jd = jd + h / 6 * (l1 + 2 * l2 + 2 * l3 + l4)
        K.release(n * h, (n + 0.5) * h)
        coords.append(j)
        derivs.append(jd)

    times = np.linspace(0.0, t, steps + 1)
    fields = np.empty((steps + 1, J0.shape[0], space.chart_dim))
    derivatives = np.empty_like(fields)
    points = np.empty((steps + 1, space.chart_dim))
    for n, tau in enumerate(times):
        basis = K.frame(float(tau)).basis
        fields[n] = coords[n] @ basis
        derivatives[n] = derivs[n] @ basis
        points[n] = space.exp(x, v, float(tau))

    logger.debug("Propagated %d Jacobi fields over %d steps", J0.shape[0], steps)
    return JacobiSolution(times, fields, derivatives, points)


def jacobi_propagate(
    space: SpaceModel,
    geodesic: TangentVector,
    J0: TangentVector,
    J0dot: TangentVector,
    t: float,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> tuple[TangentVector, TangentVector]:
    """
    ``(J(t), J'(t))`` for the Jacobi field with ``J(0) = J0`` and ``J'(0) = J0dot``.

    Raises:
        :class:`~codim.exceptions.BasePointMismatchError`: The initial conditions are not
          based at ``γ(0)``.
    """
    x = geodesic.base
    start = space.validate_tangent(x, J0)
    slope = space.validate_tangent(x, J0dot)
    solution = solve_jacobi(space, geodesic, start, slope, t, config=config)
    end = solution.points[-1]
    return (
        TangentVector(end, solution.fields[-1, 0]),
        TangentVector(end, solution.derivatives[-1, 0]),
    )


def check_jacobi_containment(
    space: SpaceModel,
    geodesic: TangentVector,
    W0: Subspace,
    config: NumericsConfig = DEFAULT_CONFIG,
    t_max: float = 2.0,
    trials: int = 20,
    seed: int = 0,
    initial_conditions: tuple[np.ndarray, np.ndarray] | None = None,
    samples: int = 64,
    values_from: Subspace | None = None,
    derivatives_from: Subspace | None = None,
) -> CheckReport:
    """
    Do Jacobi fields starting in ``W0`` stay in the transported subspaces ``W_t``?

    Initial values ``J(0)`` are seeded random combinations of ``values_from`` and initial
    derivatives ``J'(0)`` of ``derivatives_from``. Both default to all of ``W0``, which
    contains the conditions with ``J(0) ∈ TM`` and ``J'(0) ∈ V``; pass the two parts to
    sample only those. ``initial_conditions`` gives explicit values and derivatives as two
    ``(q, chart_dim)`` arrays instead.

    Leakage is measured relative to ``|J(t)|``. The details carry the curvature invariance
    residual of ``W0`` and ``dim span{J_i(t)}`` at a generic time, the converse inclusion.
    """
    x, v = geodesic.base, geodesic.dir
    invariance, _ = curvature_invariance_residual(space, x, W0)
    if invariance > config.check_tol(1e-9):
        logger.info("W0 is not curvature invariant (residual %.3e).", invariance)

    if initial_conditions is None:
        rng = np.random.default_rng(seed)
        values = W0 if values_from is None else values_from
        derivatives = W0 if derivatives_from is None else derivatives_from
        J0 = rng.normal(size=(trials, values.dim)) @ values.basis
        J0dot = rng.normal(size=(trials, derivatives.dim)) @ derivatives.basis
    else:
        J0, J0dot = (np.atleast_2d(np.asarray(a, dtype=float)) for a in initial_conditions)

    solution = solve_jacobi(space, geodesic, J0, J0dot, t_max, config=config)
    steps = len(solution.times) - 1
    indices = sorted(set(np.linspace(0, steps, min(samples, steps) + 1).round().astype(int)))
    floor = 1e-6 * space.scale
    results = []
    trace = []
    for n in indices:
        tau = float(solution.times[n])
        point = solution.points[n]
        moved = space.geodesic_transport(x, v, tau, W0.basis)
        W_t = Subspace(moved, metric=space.metric_matrix(point))
        worst = 0.0
        for i, field in enumerate(solution.fields[n]):
            size = max(space.norm(point, field), floor)
            residual = leakage(W_t, field, scale=size)
            results.append((f"t={tau:.6g}, condition {i}", residual))
            worst = max(worst, residual)

        trace.append((tau, worst))

    generic = int(round(GENERIC_TIME * steps))
    span = orthonormalize(
        list(solution.fields[generic]),
        tol=config.tolerance,
        metric=space.metric_matrix(solution.points[generic]),
        ambient_dim=space.chart_dim,
    )
    details = {
        "w0_dim": W0.dim,
        "span_dim": span.dim,
        "w0_invariance": invariance,
        "conditions": int(J0.shape[0]),
    }
    return make_report("jacobi_containment", results, config=config, details=details, trace=trace)
