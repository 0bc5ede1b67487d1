import numpy as np

from codim.ambient.base import SpaceModel
from codim.geomcore import Vec


class Euclidean(SpaceModel):
    """
    Flat ``R^n`` with the identity chart.
    """

    kind = "euclidean"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("Euclidean dimension must be >= 1.")

        self.n = n

    @property
    def dim(self) -> int:
        return self.n

    @property
    def chart_dim(self) -> int:
        return self.n

    @property
    def is_space_form(self) -> bool:
        return True

    def describe(self) -> str:
        return f"n={self.n}"

    def constraint_defect(self, x: Vec) -> float:
        return 0.0

    def project_point(self, x: Vec) -> Vec:
        return np.asarray(x, dtype=float)

    def tangent_projection(self, x: Vec, v: np.ndarray) -> np.ndarray:
        return np.asarray(v, dtype=float)

    def _curvature(self, x: Vec, X: Vec, Y: Vec, Z: Vec) -> Vec:
        return np.zeros_like(X)

    def exp(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        return x + t * v

    def velocity(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        return np.asarray(v, dtype=float).copy()

    def log_map(self, x: Vec, y: Vec) -> Vec:
        return y - x

    def geodesic_transport(self, x: Vec, v: Vec, t: float, w: np.ndarray) -> np.ndarray:
        return np.array(w, dtype=float)

    def transport_rhs(self, x: Vec, xdot: Vec, V: np.ndarray) -> np.ndarray:
        return np.zeros_like(V, dtype=float)

    def covariant_hessian(self, x: Vec, d_i: Vec, d_j: Vec, d_ij: Vec) -> Vec:
        return d_ij
