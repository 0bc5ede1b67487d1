"""Symmetric-space models and the value types that live on them.

A :class:`SpaceModel` works in an *embedding chart*: points and tangent
vectors are real arrays of length ``chart_dim``. Every model knows its metric,
curvature tensor, exponential map, closed-form transport along its own
geodesics, and the first-order transport equation used to integrate parallel
transport along arbitrary chart curves.
"""

from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from codim.exceptions import (
    BasePointMismatchError,
    DimensionMismatchError,
    ModelKindError,
    NotOnModelError,
    NotTangentError,
)
from codim.geomcore import Subspace, Vec, as_vec, ensure_finite, orthonormalize

POINT_TOL = 1e-8
"""
Allowed model-constraint defect of points and tangency defect of vectors.
"""


@dataclass(frozen=True)
class TangentVector:
    """
    A chart vector ``dir`` based at the point ``base``.
    """

    base: np.ndarray
    dir: np.ndarray

    def __post_init__(self):
        base = as_vec(self.base, context="tangent vector base")
        direction = as_vec(self.dir, context="tangent vector direction")
        if base.shape != direction.shape:
            raise DimensionMismatchError(
                base.shape[0], direction.shape[0], context="tangent vector"
            )

        object.__setattr__(self, "base", base)
        object.__setattr__(self, "dir", direction)


def unwrap_tangent(p: np.ndarray, u: "TangentVector | Vec") -> Vec:
    if isinstance(u, TangentVector):
        if u.base.shape != p.shape or not np.allclose(u.base, p, atol=POINT_TOL, rtol=0):
            raise BasePointMismatchError("Tangent vector is not based at the given point.")

        return u.dir

    return as_vec(u)


class SpaceModel(ABC):
    """
    Base class for symmetric-space ambients.
    """

    kind: str = "abstract"

    @property
    @abstractmethod
    def dim(self) -> int:
        """
        Manifold dimension.
        """

    @property
    @abstractmethod
    def chart_dim(self) -> int:
        """
        Number of embedding coordinates.
        """

    @property
    def scale(self) -> float:
        """
        Natural length scale of the model.
        """
        return 1.0

    @property
    def is_space_form(self) -> bool:
        return False

    # -- model-specific primitives --------------------------------------------

    @abstractmethod
    def constraint_defect(self, x: Vec) -> float:
        """
        How far ``x`` is from satisfying the model constraint.
        """

    @abstractmethod
    def project_point(self, x: Vec) -> Vec:
        """
        Nearest point on the model (a smooth retraction of a neighbourhood).
        """

    @abstractmethod
    def tangent_projection(self, x: Vec, v: np.ndarray) -> np.ndarray:
        """
        Orthogonal projection of chart vectors (rows) onto ``T_x``.
        """

    def metric_matrix(self, x: Vec) -> np.ndarray | None:
        """
        Gram matrix of the metric in chart coordinates; ``None`` for the dot product.
        """
        return None

    @abstractmethod
    def _curvature(self, x: Vec, X: Vec, Y: Vec, Z: Vec) -> Vec:
        pass

    @abstractmethod
    def exp(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        """
        Geodesic through ``x`` with initial velocity ``v``, evaluated at ``t``.
        """

    @abstractmethod
    def velocity(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        """
        Derivative in ``t`` of :meth:`exp`.
        """

    @abstractmethod
    def log_map(self, x: Vec, y: Vec) -> Vec:
        """
        Initial velocity of the minimizing geodesic from ``x`` reaching ``y`` at ``t=1``.
        """

    @abstractmethod
    def geodesic_transport(self, x: Vec, v: Vec, t: float, w: np.ndarray) -> np.ndarray:
        """
        Closed-form parallel transport of ``w`` (rows) along ``exp(x, v, ·)`` from 0 to ``t``.
        """

    @abstractmethod
    def transport_rhs(self, x: Vec, xdot: Vec, V: np.ndarray) -> np.ndarray:
        """
        Right-hand side of the transport equation ``V' = F(x, x', V)`` for rows ``V``.
        """

    @abstractmethod
    def covariant_hessian(self, x: Vec, d_i: Vec, d_j: Vec, d_ij: Vec) -> Vec:
        """
        ``∇̄_{∂_i} ∂_j`` of a parametrization from its chart derivatives.
        """

    def align(self, x_from: Vec, x_to: Vec, w: np.ndarray) -> np.ndarray:
        """
        Re-express tangent vectors at ``x_from`` in the chart representative ``x_to`` of the
        same point. Only models with non-unique representatives override this.
        """
        return w

    def random_point(self, rng: np.random.Generator) -> Vec:
        return self.project_point(rng.normal(size=self.chart_dim))

    # -- shared operations -------------------------------------------------------

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"

    def describe(self) -> str:
        return f"dim={self.dim}"

    def validate_point(self, x, tol: float = POINT_TOL) -> Vec:
        x = as_vec(x, context="point")
        if x.shape[0] != self.chart_dim:
            raise DimensionMismatchError(self.chart_dim, x.shape[0], context=f"point of {self!r}")

        defect = self.constraint_defect(x)
        if defect > tol * max(self.scale, 1.0):
            raise NotOnModelError(repr(self), defect)

        return x

    def tangency_defect(self, x: Vec, v: Vec) -> float:
        return float(np.max(np.abs(v - self.tangent_projection(x, v)), initial=0.0))

    def validate_tangent(self, x: Vec, v, tol: float = POINT_TOL) -> Vec:
        v = unwrap_tangent(x, v)
        if v.shape[0] != self.chart_dim:
            raise DimensionMismatchError(self.chart_dim, v.shape[0], context="tangent vector")

        defect = self.tangency_defect(x, v)
        if defect > tol * max(1.0, float(np.max(np.abs(v), initial=0.0))):
            raise NotTangentError(repr(self), defect)

        return v

    def metric(self, p: Vec, u: "TangentVector | Vec", v: "TangentVector | Vec") -> float:
        p = as_vec(p)
        u = unwrap_tangent(p, u)
        v = unwrap_tangent(p, v)
        gram = self.metric_matrix(p)
        if gram is None:
            return float(np.dot(u, v))

        return float(u @ gram @ v)

    def norm(self, p: Vec, v: "TangentVector | Vec") -> float:
        return float(np.sqrt(max(self.metric(p, v, v), 0.0)))

    def curvature(
        self,
        p: Vec,
        x: "TangentVector | Vec",
        y: "TangentVector | Vec",
        z: "TangentVector | Vec",
    ) -> Vec:
        """
        The curvature tensor ``R̄(x, y) z`` with ``R̄(x, y) = ∇_x ∇_y - ∇_y ∇_x - ∇_[x,y]``.
        """
        p = as_vec(p)
        X, Y, Z = (unwrap_tangent(p, w) for w in (x, y, z))
        result = self._curvature(p, X, Y, Z)
        return ensure_finite(self.tangent_projection(p, result), context="curvature")

    def complex_structure(self, p: Vec, u: "TangentVector | Vec") -> Vec:
        raise ModelKindError(f"{self!r} has no complex structure.")

    def exp_map(self, v: TangentVector, t: float = 1.0) -> Vec:
        return ensure_finite(self.exp(v.base, v.dir, t), context="exp_map")

    def geodesic_velocity(self, v: TangentVector, t: float = 1.0) -> TangentVector:
        return TangentVector(self.exp(v.base, v.dir, t), self.velocity(v.base, v.dir, t))

    def distance(self, x: Vec, y: Vec) -> float:
        return self.norm(x, self.log_map(x, y))

    def tangent_space(self, x: Vec) -> Subspace:
        """
        Orthonormal basis of ``T_x`` in the model metric.
        """
        spanning = self.tangent_projection(x, np.eye(self.chart_dim))
        return orthonormalize(list(spanning), metric=self.metric_matrix(x))

    def random_tangent(self, x: Vec, rng: np.random.Generator, length: float | None = None) -> Vec:
        v = self.tangent_projection(x, rng.normal(size=self.chart_dim))
        if length is None:
            return v

        size = self.norm(x, v)
        return v * (length / size) if size > 0 else v

    def covariant_derivative(
        self, x: Vec, xdot: Vec, v: np.ndarray, vdot: np.ndarray
    ) -> np.ndarray:
        """
        ``∇̄_{x'} V`` for a field ``V`` along a chart curve, given ``V`` and its chart derivative.
        """
        rows = np.atleast_2d(v)
        rhs = self.transport_rhs(x, xdot, rows)
        result = self.tangent_projection(x, np.atleast_2d(vdot) - rhs)
        return result if np.ndim(v) == 2 else result[0]

    def pushforward(self, x: Vec, d: np.ndarray) -> np.ndarray:
        """
        Tangent vector represented by a chart velocity ``d`` of a curve through ``x``.
        """
        return self.tangent_projection(x, d)


@dataclass
class DiscretizedCurve:
    """
    An ordered list of samples, optionally backed by a parametrization.

    When ``path`` is given, transport integrates the transport equation with
    RK4 between the sample times; otherwise consecutive samples are joined by
    geodesic chords. ``breakpoints`` are sample indices where smoothness may fail.
    """

    samples: np.ndarray
    times: np.ndarray
    breakpoints: tuple[int, ...] = ()
    path: Callable[[float], np.ndarray] | None = None
    path_velocity: Callable[[float], np.ndarray] | None = None
    _pieces: list[tuple[float, float]] = field(init=False, repr=False)

    def __post_init__(self):
        self.samples = np.atleast_2d(np.asarray(self.samples, dtype=float))
        self.times = np.asarray(self.times, dtype=float)
        if self.times.shape[0] != self.samples.shape[0]:
            raise DimensionMismatchError(
                self.samples.shape[0], self.times.shape[0], context="curve times vs samples"
            )

        ensure_finite(self.samples, context="curve samples")
        cuts = sorted({0, len(self.times) - 1, *self.breakpoints})
        self._pieces = [
            (float(self.times[a]), float(self.times[b]))
            for a, b in zip(cuts, cuts[1:], strict=False)
        ]

    @classmethod
    def from_samples(
        cls, samples: Sequence[Vec] | np.ndarray, breakpoints: Sequence[int] = ()
    ) -> "DiscretizedCurve":
        samples = np.atleast_2d(np.asarray(samples, dtype=float))
        return cls(samples, np.arange(samples.shape[0], dtype=float), tuple(breakpoints))

    @classmethod
    def from_path(
        cls,
        path: Callable[[float], np.ndarray],
        t0: float = 0.0,
        t1: float = 1.0,
        num: int = 64,
        breaks: Sequence[float] = (),
        velocity: Callable[[float], np.ndarray] | None = None,
    ) -> "DiscretizedCurve":
        """
        Sample ``path`` on ``num`` intervals of ``[t0, t1]``; ``breaks`` are parameter values
        of corners and are always sample times.
        """
        inner = sorted(b for b in breaks if t0 < b < t1)
        edges = [t0, *inner, t1]
        span = t1 - t0
        times: list[float] = [t0]
        breakpoints: list[int] = []
        for a, b in zip(edges, edges[1:], strict=False):
            count = max(1, round(num * (b - a) / span)) if span else 1
            times.extend(np.linspace(a, b, count + 1)[1:].tolist())
            breakpoints.append(len(times) - 1)

        # The last entry is the curve end, not a corner.
        breakpoints = breakpoints[:-1]
        samples = np.array([path(t) for t in times])
        return cls(samples, np.array(times), tuple(breakpoints), path=path, path_velocity=velocity)

    @classmethod
    def geodesic(cls, space: SpaceModel, x: Vec, v: Vec, t1: float = 1.0, num: int = 64):
        return cls.from_path(
            lambda t: space.exp(x, v, t),
            0.0,
            t1,
            num=num,
            velocity=lambda t: space.velocity(x, v, t),
        )

    @property
    def start(self) -> Vec:
        return self.samples[0]

    @property
    def end(self) -> Vec:
        return self.samples[-1]

    @property
    def pieces(self) -> list[tuple[float, float]]:
        return list(self._pieces)

    def piece_of(self, t: float, prefer_right: bool = True) -> tuple[float, float]:
        for a, b in self._pieces:
            if a <= t < b or (not prefer_right and a < t <= b):
                return a, b

        return self._pieces[-1] if t >= self._pieces[-1][0] else self._pieces[0]

    def point(self, t: float) -> Vec:
        if self.path is None:
            raise ValueError("Curve has no parametrization.")

        return np.asarray(self.path(t), dtype=float)

    def velocity(self, t: float, piece: tuple[float, float] | None = None) -> Vec:
        """
        Chart velocity at ``t``, one-sided at the ends of the smooth piece.
        """
        if self.path_velocity is not None:
            return np.asarray(self.path_velocity(t), dtype=float)

        a, b = piece or self.piece_of(t)
        return piecewise_derivative(self.point, t, a, b)

    def reversed(self) -> "DiscretizedCurve":
        last = len(self.times) - 1
        t_end = float(self.times[-1]) + float(self.times[0])
        path = None if self.path is None else (lambda t, f=self.path: f(t_end - t))
        velocity = (
            None if self.path_velocity is None else (lambda t, f=self.path_velocity: -f(t_end - t))
        )
        return DiscretizedCurve(
            self.samples[::-1].copy(),
            t_end - self.times[::-1],
            tuple(sorted(last - b for b in self.breakpoints)),
            path=path,
            path_velocity=velocity,
        )

    def restricted(self, count: int) -> "DiscretizedCurve":
        """
        The initial part made of the first ``count + 1`` samples.
        """
        return DiscretizedCurve(
            self.samples[: count + 1],
            self.times[: count + 1],
            tuple(b for b in self.breakpoints if b < count),
            path=self.path,
            path_velocity=self.path_velocity,
        )

    def chord_lengths(self, space: SpaceModel) -> np.ndarray:
        return np.array(
            [space.distance(a, b) for a, b in zip(self.samples, self.samples[1:], strict=False)]
        )


def piecewise_derivative(
    fn: Callable[[float], np.ndarray], t: float, a: float, b: float, rel_step: float = 1e-3
) -> np.ndarray:
    """
    Fourth-order finite difference of ``fn`` at ``t`` using only points of ``[a, b]``.
    """
    length = b - a
    if length <= 0:
        return np.zeros_like(np.asarray(fn(t), dtype=float))

    h = rel_step * length
    if t - 2 * h >= a and t + 2 * h <= b:
        return (-fn(t + 2 * h) + 8 * fn(t + h) - 8 * fn(t - h) + fn(t - 2 * h)) / (12 * h)

    sign = 1.0 if t - 2 * h < a else -1.0
    h = sign * h
    values = [np.asarray(fn(t + k * h), dtype=float) for k in range(5)]
    return (
        -25 * values[0] + 48 * values[1] - 36 * values[2] + 16 * values[3] - 3 * values[4]
    ) / (12 * h)
