"""Holonomy of a homotopy of loops, computed two independent ways.

For a sheet ``f(s, t)`` with ``f(s, 0) = p`` the map ``τ(s)`` transports ``T_p`` along
``f(0, ·)``, then along ``f(·, 1)`` up to ``s``, and back along ``f(s, ·)``. Its
logarithmic derivative ``A(s) = τ'(s) τ(s)⁻¹`` is obtained

* by finite differences of ``τ`` in ``s`` (:func:`holonomy_fd`), and
* as the curvature integral ``⟨A(s)u, w⟩ = ∫ ⟨R̄(∂_s f, ∂_t f) U(t), W(t)⟩ dt`` with
  ``U, W`` parallel along ``f(s, ·)`` (:func:`holonomy_integral_matrix`).

:func:`verify_holonomy_lemma` compares the two.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from codim.ambient.base import POINT_TOL, DiscretizedCurve, SpaceModel, piecewise_derivative
from codim.ambient.transport import transport_vectors
from codim.exceptions import BasePointMismatchError, QuadratureRefinementError
from codim.geomcore import Subspace, Vec
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport
from codim.reduction.reports import make_report

logger = logging.getLogger(__name__)

SheetMap = Callable[[float, float], np.ndarray]

REFINEMENT_TOL = 5e-5
"""
Allowed gap between the quadrature on the sample grid and on every other sample,
relative to the largest integrand entry (at least 1).
"""

S_STEP = 1e-4
"""
Relative step of the derivative ``∂_s f``.
"""


@dataclass
class HomotopySheet:
    """
    A map ``(s, t) ∈ [0, 1]^2 -> S`` with ``f(s, 0) = base`` for every ``s``.

    ``breakpoints`` are the ``t`` values where ``f`` is only piecewise smooth; they are
    sample times of every ``t``-curve and split the quadrature.
    """

    space: SpaceModel
    base: Vec
    fn: SheetMap
    breakpoints: tuple[float, ...] = ()
    num_s: int = 64
    num_t: int = 64
    name: str = ""
    _first_leg: dict[int, np.ndarray] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.base = self.space.validate_point(self.base)
        self.breakpoints = tuple(sorted(float(b) for b in self.breakpoints))
        tol = POINT_TOL * max(self.space.scale, 1.0) * 100
        for s in np.linspace(0.0, 1.0, 5):
            defect = float(np.max(np.abs(self.point(float(s), 0.0) - self.base)))
            if defect > tol:
                raise BasePointMismatchError(
                    f"Sheet {self.name or ''} misses its base point at s={s:g} "
                    f"(defect {defect:.3e})."
                )

    def __repr__(self) -> str:
        return f"<HomotopySheet {self.name or 'f'} in {self.space!r}>"

    @property
    def s_step(self) -> float:
        return 1.0 / self.num_s

    @property
    def basis(self) -> Subspace:
        return self.space.tangent_space(self.base)

    def point(self, s: float, t: float) -> np.ndarray:
        return np.asarray(self.fn(s, t), dtype=float)

    def curve_t(self, s: float) -> DiscretizedCurve:
        """
        ``t ↦ f(s, t)`` on ``[0, 1]``.
        """
        return DiscretizedCurve.from_path(
            lambda t: self.point(s, t), 0.0, 1.0, num=self.num_t, breaks=self.breakpoints
        )

    def curve_top(self, s: float) -> DiscretizedCurve:
        """
        ``r ↦ f(r, 1)`` on ``[0, s]``.
        """
        num = max(2, math.ceil(self.num_s * s))
        return DiscretizedCurve.from_path(lambda r: self.point(r, 1.0), 0.0, s, num=num)

    def first_leg(self, config: NumericsConfig) -> np.ndarray:
        key = config.steps_per_unit
        if key not in self._first_leg:
            self._first_leg[key] = transport_vectors(
                self.space, self.curve_t(0.0), self.basis.basis, config=config
            )

        return self._first_leg[key]


def orthogonality_defect(tau: np.ndarray) -> float:
    return float(np.max(np.abs(tau.T @ tau - np.eye(tau.shape[0])), initial=0.0))


def holonomy_direct(
    sheet: HomotopySheet, s: float, config: NumericsConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """
    The matrix of ``τ(s)`` in the orthonormal basis ``sheet.basis`` of ``T_p``.
    """
    basis = sheet.basis
    if s == 0:
        return np.eye(basis.dim)

    space = sheet.space
    moved = transport_vectors(space, sheet.curve_top(s), sheet.first_leg(config), config=config)
    back = transport_vectors(space, sheet.curve_t(s).reversed(), moved, config=config)
    tau = np.array([basis.coordinates(row) for row in back]).T
    logger.debug("τ(%.4g) orthogonality defect %.3e", s, orthogonality_defect(tau))
    return tau


def holonomy_fd(
    sheet: HomotopySheet, s: float, config: NumericsConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """
    ``τ'(s) τ(s)ᵀ`` with a Richardson-extrapolated central difference of step one
    ``s``-cell. ``s`` must keep one cell away from ``0`` and ``1``.
    """
    delta = sheet.s_step
    if not delta <= s <= 1.0 - delta:
        raise ValueError(f"s={s:g} is closer than one cell ({delta:g}) to the ends of [0, 1].")

    def central(h: float) -> np.ndarray:
        return (holonomy_direct(sheet, s + h, config) - holonomy_direct(sheet, s - h, config)) / (
            2 * h
        )

    derivative = (4 * central(delta / 2) - central(delta)) / 3
    return derivative @ holonomy_direct(sheet, s, config).T


def holonomy_integral_matrix(
    sheet: HomotopySheet, s: float, config: NumericsConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """
    The matrix of ``A(s)`` from the curvature integral, composite Simpson on each smooth
    piece of ``f(s, ·)``.

    Raises:
        :class:`~codim.exceptions.QuadratureRefinementError`: The quadrature on every other
          sample disagrees, which happens when a corner was not declared.
    """
    space = sheet.space
    curve = sheet.curve_t(s)
    basis = sheet.basis
    history = transport_vectors(space, curve, basis.basis, config=config, record=True)
    times = curve.times

    def integrand(k: int, piece: tuple[float, float]) -> np.ndarray:
        t = float(times[k])
        x = curve.samples[k]
        dt = space.tangent_projection(
            x, piecewise_derivative(lambda r: sheet.point(s, r), t, *piece)
        )
        ds = space.tangent_projection(
            x, piecewise_derivative(lambda r: sheet.point(r, t), s, 0.0, 1.0, rel_step=S_STEP)
        )
        U = history[k]
        R = np.array([space.curvature(x, ds, dt, u) for u in U])
        gram = space.metric_matrix(x)
        return R @ U.T if gram is None else R @ gram @ U.T

    fine = np.zeros((basis.dim, basis.dim))
    coarse = np.zeros_like(fine)
    peak = 0.0
    for a, b in curve.pieces:
        index = np.flatnonzero((times >= a) & (times <= b))
        values = np.array([integrand(int(k), (a, b)) for k in index])
        fine += simpson(values, x=times[index], axis=0)
        every_other = list(range(0, len(index), 2))
        if every_other[-1] != len(index) - 1:
            every_other.append(len(index) - 1)

        coarse += simpson(values[every_other], x=times[index][every_other], axis=0)
        peak = max(peak, float(np.max(np.abs(values), initial=0.0)))

    threshold = REFINEMENT_TOL * max(1.0, peak)
    gap = np.abs(fine - coarse)
    if gap.size and float(np.max(gap)) > threshold:
        worst = np.unravel_index(int(np.argmax(gap)), gap.shape)
        raise QuadratureRefinementError(float(fine[worst]), float(coarse[worst]), threshold)

    return fine.T


def holonomy_derivative_integral(
    sheet: HomotopySheet,
    s: float,
    u: Vec,
    w: Vec,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> float:
    """
    ``⟨A(s)u, w⟩`` for tangent vectors ``u, w`` at the base point.
    """
    basis = sheet.basis
    A = holonomy_integral_matrix(sheet, s, config=config)
    return float(basis.coordinates(np.asarray(w, dtype=float)) @ A @ basis.coordinates(u))


def verify_holonomy_lemma(
    sheet: HomotopySheet,
    s_samples: Sequence[float] = (0.25, 0.5, 0.75),
    config: NumericsConfig = DEFAULT_CONFIG,
) -> CheckReport:
    """
    Entrywise agreement of the curvature integral with the finite-difference derivative
    of the holonomy; the skew parts of both count as residuals too.
    """
    delta = sheet.s_step
    samples = []
    trace = []
    skew_integral = skew_fd = orthogonality = 0.0
    for s in s_samples:
        s = float(min(max(s, delta), 1.0 - delta))
        A_int = holonomy_integral_matrix(sheet, s, config=config)
        A_fd = holonomy_fd(sheet, s, config=config)
        orthogonality = max(orthogonality, orthogonality_defect(holonomy_direct(sheet, s, config)))
        diff = float(np.max(np.abs(A_int - A_fd), initial=0.0))
        skew_i = float(np.max(np.abs(A_int + A_int.T), initial=0.0))
        skew_f = float(np.max(np.abs(A_fd + A_fd.T), initial=0.0))
        skew_integral = max(skew_integral, skew_i)
        skew_fd = max(skew_fd, skew_f)
        samples.append((f"s={s:.4g}", diff))
        samples.append((f"s={s:.4g} (skew, integral)", skew_i))
        samples.append((f"s={s:.4g} (skew, finite difference)", skew_f))
        trace.append((s, diff))

    details = {
        "skew_integral": skew_integral,
        "skew_fd": skew_fd,
        "orthogonality_defect": orthogonality,
        "sheet": sheet.name,
    }
    return make_report("holonomy_lemma", samples, config=config, details=details, trace=trace)


def random_smooth_sheet(
    space: SpaceModel,
    p: Vec | None = None,
    seed: int = 0,
    num_s: int = 64,
    num_t: int = 64,
    length: float = 0.4,
) -> HomotopySheet:
    """
    ``f(s, t) = exp_p(t a + s t b + s t² c)`` for seeded random tangent vectors of norm
    ``length`` (times the model scale).
    """
    rng = np.random.default_rng(seed)
    p = space.random_point(rng) if p is None else space.validate_point(p)
    a, b, c = (space.random_tangent(p, rng, length=length * space.scale) for _ in range(3))

    def fn(s: float, t: float) -> np.ndarray:
        return space.exp(p, t * a + s * t * b + s * t * t * c)

    return HomotopySheet(space, p, fn, num_s=num_s, num_t=num_t, name=f"random(seed={seed})")
