"""Complex projective space with the Fubini-Study metric.

A point of ``CP^n`` is stored as a unit representative ``z`` in ``C^{n+1}``,
written in the real chart ``[Re z, Im z]``. Tangent vectors at ``z`` are
horizontal lifts, i.e. complex-orthogonal to ``z``. Representatives are only
defined up to a phase; every operation here is gauge-covariant and
:meth:`ComplexProjective.align` re-expresses vectors between representatives.
"""

import numpy as np

from codim.ambient.base import SpaceModel, unwrap_tangent
from codim.geomcore import Vec


def to_complex(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    half = x.shape[-1] // 2
    return x[..., :half] + 1j * x[..., half:]


def to_real(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag], axis=-1)


def hermitian(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    ``<a, b>_C = sum(conj(a) * b)`` along the last axis.
    """
    return (np.conj(a) * b).sum(axis=-1)


class ComplexProjective(SpaceModel):
    """
    ``CP^n`` with holomorphic sectional curvature ``c`` (sectional curvatures in ``[c/4, c]``).
    """

    kind = "complex_projective"

    def __init__(self, n: int, c: float = 4.0):
        if n < 1:
            raise ValueError("Complex dimension must be >= 1.")
        if not c > 0:
            raise ValueError("Holomorphic sectional curvature must be > 0.")

        self.n = n
        self.c = float(c)
        self._weight = 4.0 / self.c

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def chart_dim(self) -> int:
        return 2 * self.n + 2

    @property
    def scale(self) -> float:
        return float(np.sqrt(self._weight))

    @property
    def is_space_form(self) -> bool:
        return self.n == 1

    def describe(self) -> str:
        return f"n={self.n}, c={self.c:g}"

    def metric_matrix(self, x: Vec) -> np.ndarray | None:
        if self._weight == 1.0:
            return None

        return self._weight * np.eye(self.chart_dim)

    def constraint_defect(self, x: Vec) -> float:
        return abs(float(np.linalg.norm(x)) - 1.0)

    def project_point(self, x: Vec) -> Vec:
        x = np.asarray(x, dtype=float)
        length = np.linalg.norm(x)
        if length == 0:
            raise ValueError("Cannot normalize the zero representative.")

        return x / length

    def tangent_projection(self, x: Vec, v: np.ndarray) -> np.ndarray:
        z = to_complex(x)
        V = to_complex(v)
        return to_real(V - np.multiply.outer(hermitian(z, V), z))

    def complex_structure(self, p: Vec, u) -> Vec:
        u = unwrap_tangent(np.asarray(p, dtype=float), u)
        return to_real(1j * to_complex(u))

    def _curvature(self, x: Vec, X: Vec, Y: Vec, Z: Vec) -> Vec:
        # With g = (4/c) <,>, the c/4 prefactor cancels against the metric weight.
        JX = to_real(1j * to_complex(X))
        JY = to_real(1j * to_complex(Y))
        JZ = to_real(1j * to_complex(Z))
        return (
            np.dot(Y, Z) * X
            - np.dot(X, Z) * Y
            + np.dot(JY, Z) * JX
            - np.dot(JX, Z) * JY
            - 2.0 * np.dot(JX, Y) * JZ
        )

    def exp(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        speed = float(np.linalg.norm(v))
        if speed == 0:
            return np.asarray(x, dtype=float).copy()

        return np.cos(speed * t) * x + np.sin(speed * t) * v / speed

    def velocity(self, x: Vec, v: Vec, t: float = 1.0) -> Vec:
        speed = float(np.linalg.norm(v))
        return -speed * np.sin(speed * t) * x + np.cos(speed * t) * v

    def log_map(self, x: Vec, y: Vec) -> Vec:
        z = to_complex(x)
        w = to_complex(y)
        overlap = hermitian(z, w)
        modulus = float(abs(overlap))
        if modulus > 0:
            w = w * np.conj(overlap) / modulus

        h = w - min(modulus, 1.0) * z
        length = float(np.linalg.norm(h))
        if length < 1e-15:
            return np.zeros_like(np.asarray(x, dtype=float))

        theta = float(np.arccos(np.clip(modulus, 0.0, 1.0)))
        return to_real(theta * h / length)

    def geodesic_transport(self, x: Vec, v: Vec, t: float, w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        speed = float(np.linalg.norm(v))
        if speed == 0:
            return w.copy()

        z = to_complex(x)
        unit = to_complex(v) / speed
        W = to_complex(w)
        along = hermitian(unit, W)
        angle = speed * t
        moved = -np.sin(angle) * z + np.cos(angle) * unit
        return to_real(W + np.multiply.outer(along, moved - unit))

    def transport_rhs(self, x: Vec, xdot: Vec, V: np.ndarray) -> np.ndarray:
        z = to_complex(x)
        zdot = to_complex(xdot)
        W = to_complex(V)
        gauge = hermitian(z, zdot)
        return to_real(gauge * W - np.multiply.outer(hermitian(zdot, W), z))

    def covariant_hessian(self, x: Vec, d_i: Vec, d_j: Vec, d_ij: Vec) -> Vec:
        z = to_complex(x)
        horizontal = self.tangent_projection(x, d_ij)
        X_i = to_complex(self.tangent_projection(x, d_i))
        X_j = to_complex(self.tangent_projection(x, d_j))
        correction = hermitian(z, to_complex(d_j)) * X_i + hermitian(z, to_complex(d_i)) * X_j
        return horizontal - to_real(correction)

    def align(self, x_from: Vec, x_to: Vec, w: np.ndarray) -> np.ndarray:
        overlap = hermitian(to_complex(x_from), to_complex(x_to))
        modulus = abs(overlap)
        if modulus == 0:
            return w

        return to_real((overlap / modulus) * to_complex(w))
