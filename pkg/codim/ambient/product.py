from collections.abc import Sequence

import numpy as np
from scipy.linalg import block_diag

from codim.ambient.base import SpaceModel
from codim.ambient.euclidean import Euclidean
from codim.geomcore import Vec


class Product(SpaceModel):
    """
    Riemannian product of symmetric spaces; every operation acts blockwise on the chart.
    """

    kind = "product"

    def __init__(self, factors: Sequence[SpaceModel]):
        if not factors:
            raise ValueError("Product needs at least one factor.")

        self.factors = tuple(factors)
        offsets = np.cumsum([0, *(f.chart_dim for f in self.factors)])
        self.slices = tuple(slice(a, b) for a, b in zip(offsets, offsets[1:], strict=False))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def chart_dim(self) -> int:
        return sum(f.chart_dim for f in self.factors)

    @property
    def scale(self) -> float:
        return max(f.scale for f in self.factors)

    @property
    def is_space_form(self) -> bool:
        if len(self.factors) == 1:
            return self.factors[0].is_space_form

        return all(isinstance(f, Euclidean) for f in self.factors)

    def describe(self) -> str:
        return " x ".join(repr(f) for f in self.factors)

    def _split(self, x: np.ndarray):
        x = np.asarray(x, dtype=float)
        return [x[..., s] for s in self.slices]

    def _join(self, parts) -> np.ndarray:
        return np.concatenate(parts, axis=-1)

    def metric_matrix(self, x: Vec) -> np.ndarray | None:
        grams = [f.metric_matrix(p) for f, p in zip(self.factors, self._split(x), strict=False)]
        if all(g is None for g in grams):
            return None

        blocks = [
            np.eye(f.chart_dim) if g is None else g
            for f, g in zip(self.factors, grams, strict=False)
        ]
        return block_diag(*blocks)

    def constraint_defect(self, x: Vec) -> float:
        parts = zip(self.factors, self._split(x), strict=False)
        return max(f.constraint_defect(p) for f, p in parts)

    def project_point(self, x: Vec) -> Vec:
        return self._join(
            [f.project_point(p) for f, p in zip(self.factors, self._split(x), strict=False)]
        )

    def random_point(self, rng: np.random.Generator) -> Vec:
        return self._join([f.random_point(rng) for f in self.factors])

    def _blockwise(self, method: str, x: Vec, *args) -> np.ndarray:
        parts = zip(self.factors, self._split(x), *(self._split(a) for a in args), strict=False)
        return self._join([getattr(f, method)(p, *rest) for f, p, *rest in parts])

    def tangent_projection(self, x: Vec, v: np.ndarray) -> np.ndarray:
        return self._blockwise("tangent_projection", x, v)

    def _curvature(self, x: Vec, X: Vec, Y: Vec, Z: Vec) -> Vec:
        return self._blockwise("_curvature", x, X, Y, Z)

    def exp(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        return self._join(
            [
                f.exp(p, w, t)
                for f, p, w in zip(self.factors, self._split(x), self._split(v), strict=False)
            ]
        )

    def velocity(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        return self._join(
            [
                f.velocity(p, w, t)
                for f, p, w in zip(self.factors, self._split(x), self._split(v), strict=False)
            ]
        )

    def log_map(self, x: Vec, y: Vec) -> Vec:
        return self._blockwise("log_map", x, y)

    def geodesic_transport(self, x: Vec, v: Vec, t: float, w: np.ndarray) -> np.ndarray:
        parts = zip(self.factors, self._split(x), self._split(v), self._split(w), strict=False)
        return self._join([f.geodesic_transport(p, d, t, u) for f, p, d, u in parts])

    def transport_rhs(self, x: Vec, xdot: Vec, V: np.ndarray) -> np.ndarray:
        return self._blockwise("transport_rhs", x, xdot, V)

    def covariant_hessian(self, x: Vec, d_i: Vec, d_j: Vec, d_ij: Vec) -> Vec:
        return self._blockwise("covariant_hessian", x, d_i, d_j, d_ij)

    def align(self, x_from: Vec, x_to: Vec, w: np.ndarray) -> np.ndarray:
        return self._blockwise("align", x_from, x_to, w)
