"""Curves with prescribed Frenet curvatures.

The curve and its Frenet frame are integrated together from the covariant system
``∇̄_{γ'} e_1 = κ_1 e_2``, ``∇̄_{γ'} e_i = -κ_{i-1} e_{i-1} + κ_i e_{i+1}``,
``γ' = e_1``. In chart coordinates every ``e_i`` additionally follows the model's
transport equation. Classical RK4 is used with a projection back onto the model and a
re-orthonormalization of the frame after every step.

The integrated curve is interpolated by quintic Hermite polynomials (position,
velocity and acceleration are all known at the samples), which gives the analytic
derivatives the extrinsic geometry code needs.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.interpolate import BPoly

from codim.ambient.base import DiscretizedCurve, SpaceModel, piecewise_derivative
from codim.ambient.complex_projective import ComplexProjective, to_real
from codim.ambient.sphere import Sphere
from codim.ambient.transport import FRAME_ABORT
from codim.exceptions import BundleRankError, DimensionMismatchError, FrameDegenerationError
from codim.geomcore import Subspace, Vec, orthonormalize
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport
from codim.reduction.hypotheses import (
    check_bundle_curvature_invariant,
    check_first_normal_contained,
    check_parallel_subbundle,
    curvature_invariance_residual,
)
from codim.submanifold.bundle import NormalSubbundle
from codim.submanifold.immersion import Immersion

logger = logging.getLogger(__name__)

Curvature = Callable[[float], float] | float

FRAME_TOL = 1e-9
"""
Orthonormality required of the initial frame.
"""

KAPPA_FLOOR = 1e-9
"""
``|κ_1|`` below this value makes the mean curvature vanish.
"""


def _as_function(kappa: Curvature) -> Callable[[float], float]:
    if callable(kappa):
        return kappa

    value = float(kappa)
    return lambda t: value


@dataclass
class FrenetData:
    """
    Initial conditions and curvatures of a Frenet curve.

    ``frame`` holds ``e_1 … e_d`` as rows (``d = dim S``); ``curvatures`` lists
    ``κ_1 … κ_{d-1}`` as constants or functions of arc length, missing ones are zero.
    """

    space: SpaceModel
    start: Vec
    frame: np.ndarray
    curvatures: Sequence[Curvature]
    length: float = 2.0
    steps: int = 4096
    kappas: list[Callable[[float], float]] = field(init=False, repr=False)

    def __post_init__(self):
        space = self.space
        self.start = space.validate_point(self.start)
        self.frame = np.atleast_2d(np.asarray(self.frame, dtype=float))
        if self.frame.shape != (space.dim, space.chart_dim):
            raise DimensionMismatchError(
                space.dim, self.frame.shape[0], context="Frenet frame must have dim(S) rows"
            )

        for row in self.frame:
            space.validate_tangent(self.start, row)

        defect = Subspace(self.frame, metric=space.metric_matrix(self.start)).gram_defect()
        if defect > FRAME_TOL:
            raise FrameDegenerationError(0, defect)

        if len(self.curvatures) > space.dim - 1:
            raise DimensionMismatchError(
                space.dim - 1, len(self.curvatures), context="number of Frenet curvatures"
            )

        if not self.length > 0 or self.steps < 1:
            raise ValueError("Frenet length must be > 0 and steps >= 1.")

        padded = [*self.curvatures, *([0.0] * (space.dim - 1 - len(self.curvatures)))]
        self.kappas = [_as_function(k) for k in padded]

    def kappa(self, t: float) -> np.ndarray:
        return np.array([k(t) for k in self.kappas], dtype=float)


def frenet_matrix(kappa: np.ndarray) -> np.ndarray:
    """
    ``C`` with ``∇̄ E = C E`` for the frame rows ``E``.
    """
    d = len(kappa) + 1
    C = np.zeros((d, d))
    index = np.arange(d - 1)
    C[index, index + 1] = kappa
    C[index + 1, index] = -kappa
    return C


@dataclass
class FrenetResult:
    data: FrenetData
    times: np.ndarray
    points: np.ndarray
    frames: np.ndarray
    """
    ``e_1 … e_d`` at every sample, shape ``(steps + 1, d, chart_dim)``.
    """

    max_defect: float = 0.0
    """
    Largest orthonormality defect of a step, measured before re-orthonormalization.
    """

    @property
    def space(self) -> SpaceModel:
        return self.data.space

    @cached_property
    def frame_rates(self) -> np.ndarray:
        """
        Chart derivatives of the frame rows at every sample.
        """
        space = self.space
        result = np.empty_like(self.frames)
        for n, (t, x, E) in enumerate(zip(self.times, self.points, self.frames, strict=False)):
            C = frenet_matrix(self.data.kappa(float(t)))
            result[n] = space.transport_rhs(x, E[0], E) + C @ E

        return result

    @cached_property
    def spline(self) -> BPoly:
        """
        Quintic Hermite interpolant of the curve.
        """
        accelerations = self.frame_rates[:, 0]
        data = np.stack([self.points, self.frames[:, 0], accelerations], axis=1)
        return BPoly.from_derivatives(self.times, data)

    def frame_spline(self, index: int) -> BPoly:
        """
        Cubic Hermite interpolant of ``e_{index+1}``.
        """
        derivatives = self.frame_rates[:, index]
        data = np.stack([self.frames[:, index], derivatives], axis=1)
        return BPoly.from_derivatives(self.times, data)

    @property
    def curve(self) -> DiscretizedCurve:
        spline = self.spline
        velocity = spline.derivative()
        return DiscretizedCurve(
            self.points,
            self.times,
            path=lambda t: spline(t),
            path_velocity=lambda t: velocity(t),
        )

    def immersion(self, name: str = "Frenet curve") -> Immersion:
        spline = self.spline
        first, second = spline.derivative(), spline.derivative(2)
        n = self.space.chart_dim
        return Immersion(
            self.space,
            1,
            lambda u: spline(u[0]),
            jacobian=lambda u: first(u[0]).reshape(1, n),
            hessian=lambda u: second(u[0]).reshape(1, 1, n),
            domain=[(0.0, self.data.length)],
            name=name,
        )

    def unit_speed_defect(self) -> float:
        """
        ``max | |γ'| - 1 |`` of the interpolant at the midpoints of the samples.
        """
        velocity = self.spline.derivative()
        mids = (self.times[1:] + self.times[:-1]) / 2
        space = self.space
        stride = max(1, len(mids) // 256)
        return max(abs(space.norm(self.spline(t), velocity(t)) - 1.0) for t in mids[::stride])

    def frenet_residual(self, stride: int = 16) -> float:
        """
        Largest deviation of the finite-difference covariant derivative of the frame from
        the prescribed Frenet right-hand side.
        """
        space = self.space
        worst = 0.0
        for n in range(1, len(self.times) - 1, stride):
            h = self.times[n + 1] - self.times[n - 1]
            x, E = self.points[n], self.frames[n]
            derivative = (self.frames[n + 1] - self.frames[n - 1]) / h
            covariant = space.covariant_derivative(x, E[0], E, derivative)
            expected = frenet_matrix(self.data.kappa(float(self.times[n]))) @ E
            worst = max(worst, float(np.max(np.abs(covariant - expected))))

        return worst


def frenet_integrate(data: FrenetData, config: NumericsConfig = DEFAULT_CONFIG) -> FrenetResult:
    """
    Integrate ``(γ, e_1 … e_d)`` on ``[0, length]`` with ``steps`` RK4 steps.

    Raises:
        :class:`~codim.exceptions.FrameDegenerationError`: A step moved the frame more than
          :data:`~codim.ambient.transport.FRAME_ABORT` away from orthonormality.
    """
    space = data.space
    h = data.length / data.steps

    def rhs(t: float, x: np.ndarray, E: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        C = frenet_matrix(data.kappa(t))
        return E[0], space.transport_rhs(x, E[0], E) + C @ E

    x, E = data.start.copy(), data.frame.copy()
    points, frames = [x], [E]
    max_defect = 0.0
    for n in range(data.steps):
        t = n * h
        kx1, kE1 = rhs(t, x, E)
        kx2, kE2 = rhs(t + h / 2, x + h / 2 * kx1, E + h / 2 * kE1)
        kx3, kE3 = rhs(t + h / 2, x + h / 2 * kx2, E + h / 2 * kE2)
        kx4, kE4 = rhs(t + h, x + h * kx3, E + h * kE3)
        x = space.project_point(x + h / 6 * (kx1 + 2 * kx2 + 2 * kx3 + kx4))
        E = space.tangent_projection(x, E + h / 6 * (kE1 + 2 * kE2 + 2 * kE3 + kE4))
        metric = space.metric_matrix(x)
        defect = Subspace(E, metric=metric).gram_defect()
        max_defect = max(max_defect, defect)
        if defect > FRAME_ABORT:
            raise FrameDegenerationError(n + 1, defect)

        E = orthonormalize(list(E), metric=metric, ambient_dim=space.chart_dim).basis
        if E.shape[0] != space.dim:
            raise FrameDegenerationError(n + 1, 1.0)

        points.append(x)
        frames.append(E)

    logger.debug(
        "Integrated Frenet curve of length %g in %d steps (max defect %.3e)",
        data.length,
        data.steps,
        max_defect,
    )
    times = np.linspace(0.0, data.length, data.steps + 1)
    return FrenetResult(data, times, np.array(points), np.array(frames), max_defect=max_defect)


@dataclass
class MeanCurvatureApparatus:
    times: np.ndarray
    H: np.ndarray
    nabla_H: np.ndarray
    """
    ``∇⊥_{γ'} H`` at every sample.
    """

    margin: float
    """
    Smallest ``|∇⊥H - proj_H ∇⊥H| / |H|`` along the curve; 0 when ``V`` collapses to
    ``span{H}``.
    """

    def subspace(self, index: int, metric: np.ndarray | None = None) -> Subspace:
        rows = [self.H[index], self.nabla_H[index]]
        return orthonormalize(rows, metric=metric, ambient_dim=self.H.shape[1])


def _frame_terms(data: FrenetData, t: float) -> tuple[float, float, float]:
    kappa1 = data.kappas[0]
    k1 = float(kappa1(t))
    dk1 = float(piecewise_derivative(lambda r: np.atleast_1d(kappa1(r)), t, 0.0, data.length)[0])
    k2 = float(data.kappas[1](t)) if len(data.kappas) > 1 else 0.0
    return k1, dk1, k2


def mean_curvature_apparatus(result: FrenetResult) -> MeanCurvatureApparatus:
    """
    ``H = κ_1 e_2`` and ``∇⊥H = κ_1' e_2 + κ_1 κ_2 e_3`` along the integrated curve.

    Raises:
        :class:`~codim.exceptions.BundleRankError`: ``κ_1`` vanishes somewhere.
    """
    data = result.data
    if data.space.dim < 2:
        raise BundleRankError("Curves in a one-dimensional space have no normal bundle.")

    H = np.empty_like(result.points)
    nabla_H = np.empty_like(result.points)
    margin = float("inf")
    for n, t in enumerate(result.times):
        k1, dk1, k2 = _frame_terms(data, float(t))
        if abs(k1) < KAPPA_FLOOR:
            raise BundleRankError(f"κ1 vanishes at t={t:g}; span{{H, ∇⊥H}} collapses.")

        E = result.frames[n]
        H[n] = k1 * E[1]
        nabla_H[n] = dk1 * E[1] + (k1 * k2 * E[2] if len(E) > 2 else 0.0)
        space = data.space
        point = result.points[n]
        h_sq = space.metric(point, H[n], H[n])
        rejection = nabla_H[n] - space.metric(point, nabla_H[n], H[n]) / h_sq * H[n]
        margin = min(margin, space.norm(point, rejection) / np.sqrt(h_sq))

    return MeanCurvatureApparatus(result.times, H, nabla_H, float(margin))


def mean_curvature_bundle(result: FrenetResult, immersion: Immersion) -> NormalSubbundle:
    """
    ``V = span{H, ∇⊥H}`` over ``immersion``, framed by Hermite interpolants of ``e_2, e_3``.
    """
    data = result.data
    e2 = result.frame_spline(1)
    e3 = result.frame_spline(2) if data.space.dim > 2 else None

    def frame(u: np.ndarray) -> np.ndarray:
        t = float(u[0])
        k1, dk1, k2 = _frame_terms(data, t)
        second = e2(t)
        third = e3(t) if e3 is not None else np.zeros_like(second)
        return np.array([k1 * second, dk1 * second + k1 * k2 * third])

    return NormalSubbundle(immersion, frame, 2, name="span{H, ∇⊥H}")


def cp2_frame() -> tuple[np.ndarray, np.ndarray]:
    """
    Start ``z0 = (1, 0, 0)`` with ``e1 = h1``, ``e2 = (i h1 + h2)/√2``,
    ``e3 = (i h1 - h2)/√2``, ``e4 = i h2``. ``e2`` is not proportional to ``J e1``.
    """
    h1 = np.array([0, 1, 0], dtype=complex)
    h2 = np.array([0, 0, 1], dtype=complex)
    rows = [h1, (1j * h1 + h2) / np.sqrt(2), (1j * h1 - h2) / np.sqrt(2), 1j * h2]
    start = to_real(np.array([1, 0, 0], dtype=complex))
    return start, np.array([to_real(row) for row in rows])


def cp2_counterexample_data(
    length: float = 2.0, steps: int = 4096, kappa3: Curvature = 0.0
) -> FrenetData:
    """
    ``κ1 = κ2 = 1``, ``κ3 = kappa3`` in ``CP^2`` with holomorphic curvature 4.
    """
    start, frame = cp2_frame()
    return FrenetData(ComplexProjective(2), start, frame, [1.0, 1.0, kappa3], length, steps)


def space_form_transplant(data: FrenetData, space: SpaceModel | None = None) -> FrenetData:
    """
    The same curvatures in a space form of the same dimension (the unit sphere by default),
    starting from ``(1, 0, …)`` with the standard tangent frame.
    """
    space = space or Sphere(data.space.dim)
    if space.dim != data.space.dim:
        raise DimensionMismatchError(data.space.dim, space.dim, context="transplant target")

    seed = np.zeros(space.chart_dim)
    seed[0] = 1.0
    start = space.project_point(seed)
    frame = space.tangent_space(start).basis
    return FrenetData(space, start, frame, list(data.curvatures), data.length, data.steps)


def invariance_profile(result: FrenetResult, stride: int = 64) -> np.ndarray:
    """
    Curvature invariance residual of ``span{e_1, e_2, e_3}`` at every ``stride``-th sample.
    """
    space = result.space
    values = []
    for n in range(0, len(result.times), stride):
        x = result.points[n]
        W = orthonormalize(
            list(result.frames[n][:3]), metric=space.metric_matrix(x), ambient_dim=space.chart_dim
        )
        values.append(curvature_invariance_residual(space, x, W)[0])

    return np.array(values)


@dataclass
class FrenetScenario:
    """
    A Frenet curve as an immersion with ``V = span{H, ∇⊥H}`` and the hypothesis reports.
    """

    data: FrenetData
    result: FrenetResult
    immersion: Immersion
    bundle: NormalSubbundle
    reports: list[CheckReport]


def build_frenet_scenario(
    data: FrenetData,
    config: NumericsConfig = DEFAULT_CONFIG,
    resolution: int = 17,
) -> FrenetScenario:
    result = frenet_integrate(data, config=config)
    immersion = result.immersion()
    bundle = mean_curvature_bundle(result, immersion)
    grid = immersion.grid(resolution)
    reports = [
        check_first_normal_contained(immersion, bundle, grid=grid, config=config),
        check_parallel_subbundle(immersion, bundle, config=config, resolution=resolution),
        check_bundle_curvature_invariant(immersion, bundle, grid=grid, config=config),
    ]
    return FrenetScenario(data, result, immersion, bundle, reports)


def build_cp2_counterexample(
    length: float = 2.0,
    steps: int = 4096,
    kappa3: Curvature = 0.0,
    config: NumericsConfig = DEFAULT_CONFIG,
    resolution: int = 17,
) -> FrenetScenario:
    """
    The curve with ``κ1 = κ2 = 1``, ``κ3 = 0`` in ``CP^2``: ``V`` contains ``N¹`` and is
    ``∇⊥``-parallel, yet ``Tγ ⊕ V`` is not curvature invariant.
    """
    data = cp2_counterexample_data(length, steps, kappa3)
    return build_frenet_scenario(data, config=config, resolution=resolution)
