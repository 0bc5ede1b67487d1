import numpy as np

from codim.ambient.base import SpaceModel
from codim.geomcore import Vec


class Sphere(SpaceModel):
    """
    The round sphere ``S^n`` of radius ``r`` embedded in ``R^{n+1}``.

    Sectional curvature is ``1/r^2``; the tangent space at ``x`` is ``x^⊥``.
    """

    kind = "sphere"

    def __init__(self, n: int, radius: float = 1.0):
        if n < 1:
            raise ValueError("Sphere dimension must be >= 1.")
        if not radius > 0:
            raise ValueError("Sphere radius must be > 0.")

        self.n = n
        self.radius = float(radius)

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
        return 1.0 / self.radius**2

    def describe(self) -> str:
        return f"n={self.n}, r={self.radius:g}"

    def constraint_defect(self, x: Vec) -> float:
        return abs(float(np.linalg.norm(x)) - self.radius)

    def project_point(self, x: Vec) -> Vec:
        x = np.asarray(x, dtype=float)
        length = np.linalg.norm(x)
        if length == 0:
            raise ValueError("Cannot project the origin onto the sphere.")

        return self.radius * x / length

    def tangent_projection(self, x: Vec, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return v - np.multiply.outer(v @ x, x) / self.radius**2

    def _curvature(self, x: Vec, X: Vec, Y: Vec, Z: Vec) -> Vec:
        return self.sectional_curvature * (np.dot(Y, Z) * X - np.dot(X, Z) * Y)

    def exp(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        speed = float(np.linalg.norm(v))
        if speed == 0:
            return np.asarray(x, dtype=float).copy()

        theta = speed * t / self.radius
        return np.cos(theta) * x + self.radius * np.sin(theta) * v / speed

    def velocity(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        speed = float(np.linalg.norm(v))
        theta = speed * t / self.radius
        return -(speed / self.radius) * np.sin(theta) * x + np.cos(theta) * v

    def log_map(self, x: Vec, y: Vec) -> Vec:
        cos_theta = np.clip(np.dot(x, y) / self.radius**2, -1.0, 1.0)
        w = y - cos_theta * x
        length = float(np.linalg.norm(w))
        if length < 1e-15 * self.radius:
            return np.zeros_like(x)

        return self.radius * float(np.arccos(cos_theta)) * w / length

    def geodesic_transport(self, x: Vec, v: Vec, t: float, w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        speed = float(np.linalg.norm(v))
        if speed == 0:
            return w.copy()

        unit = v / speed
        theta = speed * t / self.radius
        along = w @ unit
        moved = -np.sin(theta) * x / self.radius + np.cos(theta) * unit
        return w + np.multiply.outer(along, moved - unit)

    def transport_rhs(self, x: Vec, xdot: Vec, V: np.ndarray) -> np.ndarray:
        return -np.multiply.outer(V @ xdot, x) / self.radius**2

    def covariant_hessian(self, x: Vec, d_i: Vec, d_j: Vec, d_ij: Vec) -> Vec:
        return self.tangent_projection(x, d_ij)
