import itertools
from collections.abc import Callable, Sequence

import numpy as np

from codim.ambient.base import SpaceModel
from codim.constants import DEFAULT_FD_STEP, DEFAULT_FD_STEP2
from codim.exceptions import DimensionMismatchError, FiniteDifferenceError
from codim.geomcore import ensure_finite

ParamMap = Callable[[np.ndarray], np.ndarray]


class Immersion:
    """
    A parametrized submanifold ``F: U ⊂ R^m -> S``.

    ``fn`` maps a parameter point to chart coordinates; the result is retracted onto
    the model with ``project_point``. Optional analytic derivatives take the place of
    finite differences: ``jacobian(u)`` returns the ``(m, chart_dim)`` rows ``∂_i F``
    and ``hessian(u)`` the ``(m, m, chart_dim)`` array ``∂_i ∂_j F``.
    """

    def __init__(
        self,
        space: SpaceModel,
        param_dim: int,
        fn: ParamMap,
        jacobian: ParamMap | None = None,
        hessian: ParamMap | None = None,
        fd_step: float = DEFAULT_FD_STEP,
        fd_step2: float = DEFAULT_FD_STEP2,
        domain: Sequence[tuple[float, float]] | None = None,
        name: str = "",
    ):
        if param_dim < 0:
            raise ValueError("param_dim must be >= 0.")
        if not fd_step > 0 or not fd_step2 > 0:
            raise FiniteDifferenceError("Finite-difference steps must be positive.")
        if domain is not None and len(domain) != param_dim:
            raise DimensionMismatchError(param_dim, len(domain), context="immersion domain")

        self.space = space
        self.param_dim = param_dim
        self.fn = fn
        self.jacobian = jacobian
        self.hessian = hessian
        self.fd_step = fd_step
        self.fd_step2 = fd_step2
        self.domain = None if domain is None else [(float(a), float(b)) for a, b in domain]
        self.name = name

    def __repr__(self) -> str:
        label = self.name or "immersion"
        return f"<Immersion {label}: R^{self.param_dim} -> {self.space!r}>"

    def params(self, u) -> np.ndarray:
        u = np.atleast_1d(np.asarray(u, dtype=float)) if self.param_dim else np.zeros(0)
        if u.shape != (self.param_dim,):
            raise DimensionMismatchError(self.param_dim, u.shape[0], context="parameter point")

        return u

    def point(self, u) -> np.ndarray:
        raw = np.asarray(self.fn(self.params(u)), dtype=float)
        return self.space.project_point(ensure_finite(raw, context=f"{self!r} at {u}"))

    def _check_step(self, u: np.ndarray, step: float):
        if np.any(u + step == u):
            raise FiniteDifferenceError(f"Step {step:.1e} underflows at parameter {u}.")

    def differential(self, u) -> np.ndarray:
        """
        Chart derivatives ``∂_i F(u)`` as rows, central differences unless analytic.
        """
        u = self.params(u)
        if self.jacobian is not None:
            return np.asarray(self.jacobian(u), dtype=float).reshape(
                self.param_dim, self.space.chart_dim
            )

        h = self.fd_step
        self._check_step(u, h)
        rows = []
        for i in range(self.param_dim):
            e = np.zeros(self.param_dim)
            e[i] = h
            rows.append((self.point(u + e) - self.point(u - e)) / (2 * h))

        return np.array(rows).reshape(self.param_dim, self.space.chart_dim)

    def second_derivatives(self, u) -> np.ndarray:
        """
        ``∂_i ∂_j F(u)``: analytic, a central difference of the analytic jacobian, or
        second differences of ``point`` with the coarser step ``fd_step2``.
        """
        u = self.params(u)
        m, n = self.param_dim, self.space.chart_dim
        if self.hessian is not None:
            return np.asarray(self.hessian(u), dtype=float).reshape(m, m, n)

        result = np.zeros((m, m, n))
        if self.jacobian is not None:
            h = self.fd_step
            self._check_step(u, h)
            for i in range(m):
                e = np.zeros(m)
                e[i] = h
                result[i] = (self.differential(u + e) - self.differential(u - e)) / (2 * h)

            return 0.5 * (result + result.transpose(1, 0, 2))

        h = self.fd_step2
        self._check_step(u, h)
        center = self.point(u)
        for i, j in itertools.combinations_with_replacement(range(m), 2):
            e_i = np.zeros(m)
            e_i[i] = h
            if i == j:
                value = (self.point(u + e_i) - 2 * center + self.point(u - e_i)) / h**2
            else:
                e_j = np.zeros(m)
                e_j[j] = h
                value = (
                    self.point(u + e_i + e_j)
                    - self.point(u + e_i - e_j)
                    - self.point(u - e_i + e_j)
                    + self.point(u - e_i - e_j)
                ) / (4 * h**2)

            result[i, j] = result[j, i] = value

        return result

    def contains(self, u, slack: float = 0.0) -> bool:
        if self.domain is None:
            return True

        u = self.params(u)
        return all(a - slack <= x <= b + slack for x, (a, b) in zip(u, self.domain, strict=False))

    def grid(self, resolution: int | Sequence[int] = 5, margin: float = 0.0) -> np.ndarray:
        """
        Tensor grid over the domain, ``margin`` (a fraction of each side) kept away from the edges.
        """
        if self.param_dim == 0:
            return np.zeros((1, 0))

        if self.domain is None:
            raise ValueError(f"{self!r} has no domain to sample.")

        counts = [resolution] * self.param_dim if isinstance(resolution, int) else list(resolution)
        axes = []
        for (a, b), count in zip(self.domain, counts, strict=False):
            pad = margin * (b - a)
            if count > 1:
                axes.append(np.linspace(a + pad, b - pad, count))
            else:
                axes.append(np.array([(a + b) / 2]))

        return np.array(list(itertools.product(*axes)))
