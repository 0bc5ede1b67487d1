import numpy as np

from codim.ambient.base import SpaceModel
from codim.geomcore import Vec


def minkowski(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """
    Lorentzian product ``-u_0 v_0 + u_1 v_1 + ...`` along the last axis.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return (u[..., 1:] * v[..., 1:]).sum(axis=-1) - u[..., 0] * v[..., 0]


class Hyperbolic(SpaceModel):
    """
    Hyperbolic space ``H^n`` of curvature ``-1/r^2`` as the upper sheet of the
    hyperboloid ``<x, x>_L = -r^2`` in Minkowski space ``R^{1,n}``.
    """

    kind = "hyperbolic"

    def __init__(self, n: int, radius: float = 1.0):
        if n < 1:
            raise ValueError("Hyperbolic dimension must be >= 1.")
        if not radius > 0:
            raise ValueError("Hyperbolic radius must be > 0.")

        self.n = n
        self.radius = float(radius)
        self._gram = np.diag([-1.0] + [1.0] * n)

    @property
    def dim(self) -> int:
        return self.n

    @property
    def chart_dim(self) -> int:
        return self.n + 1

    @property
    def scale(self) -> float:
        return self.radius

    @property
    def is_space_form(self) -> bool:
        return True

    @property
    def sectional_curvature(self) -> float:
        return -1.0 / self.radius**2

    @property
    def origin(self) -> Vec:
        point = np.zeros(self.chart_dim)
        point[0] = self.radius
        return point

    def describe(self) -> str:
        return f"n={self.n}, r={self.radius:g}"

    def metric_matrix(self, x: Vec) -> np.ndarray:
        return self._gram

    def constraint_defect(self, x: Vec) -> float:
        if x[0] <= 0:
            return float("inf")

        return abs(float(minkowski(x, x)) + self.radius**2) / self.radius

    def project_point(self, x: Vec) -> Vec:
        point = np.array(x, dtype=float)
        point[0] = np.sqrt(self.radius**2 + float(np.dot(point[1:], point[1:])))
        return point

    def random_point(self, rng: np.random.Generator) -> Vec:
        spatial = 0.5 * self.radius * rng.normal(size=self.n)
        return self.project_point(np.concatenate([[0.0], spatial]))

    def tangent_projection(self, x: Vec, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return v + np.multiply.outer(minkowski(v, x), x) / self.radius**2

    def _norm(self, v: Vec) -> float:
        return float(np.sqrt(max(float(minkowski(v, v)), 0.0)))

    def _curvature(self, x: Vec, X: Vec, Y: Vec, Z: Vec) -> Vec:
        return self.sectional_curvature * (minkowski(Y, Z) * X - minkowski(X, Z) * Y)

    def exp(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        speed = self._norm(v)
        if speed == 0:
            return np.asarray(x, dtype=float).copy()

        theta = speed * t / self.radius
        return np.cosh(theta) * x + self.radius * np.sinh(theta) * v / speed

    def velocity(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        speed = self._norm(v)
        theta = speed * t / self.radius
        return (speed / self.radius) * np.sinh(theta) * x + np.cosh(theta) * v

    def log_map(self, x: Vec, y: Vec) -> Vec:
        cosh_theta = max(-float(minkowski(x, y)) / self.radius**2, 1.0)
        w = y - cosh_theta * x
        length = self._norm(w)
        if length < 1e-15 * self.radius:
            return np.zeros_like(x)

        return self.radius * float(np.arccosh(cosh_theta)) * w / length

    def geodesic_transport(self, x: Vec, v: Vec, t: float, w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        speed = self._norm(v)
        if speed == 0:
            return w.copy()

        unit = v / speed
        theta = speed * t / self.radius
        along = minkowski(w, unit)
        moved = np.sinh(theta) * x / self.radius + np.cosh(theta) * unit
        return w + np.multiply.outer(along, moved - unit)

    def transport_rhs(self, x: Vec, xdot: Vec, V: np.ndarray) -> np.ndarray:
        return np.multiply.outer(minkowski(V, xdot), x) / self.radius**2

    def covariant_hessian(self, x: Vec, d_i: Vec, d_j: Vec, d_ij: Vec) -> Vec:
        return self.tangent_projection(x, d_ij)
