"""Extrinsic geometry of an immersion from its chart derivatives.

Tangent vectors of ``M`` are handled as chart vectors at ``F(u)``. They are
expanded in the coordinate fields ``X_i = dF(∂_i)`` by solving the Gram
system, so every quantity is reduced to coordinate data:
``∇̄_{∂_i} ∂_j F`` comes from the model's covariant Hessian, and normal fields
are differentiated along parameter lines.
"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.linalg import orthogonal_procrustes

from codim.constants import DEFAULT_RANK_REL
from codim.exceptions import FrameDiscontinuityError, RankDeficiencyError
from codim.geomcore import Subspace, Vec, complement, orthonormalize, project, subspace_residual
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.tolerance import DEFAULT_TOLERANCE, Tolerance
from codim.submanifold.immersion import Immersion

NormalField = Callable[[np.ndarray], np.ndarray]

FIRST_NORMAL_FLOOR = 1e-6
"""
Values of the second fundamental form below this norm (times model scale) count as zero.
"""


@dataclass(frozen=True)
class LocalFrame:
    """
    First-order data of an immersion at one parameter point.
    """

    u: np.ndarray
    point: np.ndarray
    derivatives: np.ndarray
    """
    Raw chart derivatives ``∂_i F``.
    """

    coordinate_fields: np.ndarray
    """
    Tangent vectors ``X_i`` represented by the derivatives.
    """

    tangent: Subspace
    normal: Subspace

    @property
    def gram(self) -> np.ndarray:
        X = self.coordinate_fields
        weighted = X if self.tangent.metric is None else X @ self.tangent.metric
        return weighted @ X.T

    def coefficients(self, X: Vec) -> np.ndarray:
        """
        Coordinates of the tangent vector ``X`` in the fields ``X_i``.
        """
        if self.u.shape[0] == 0:
            return np.zeros(0)

        fields = self.coordinate_fields
        weighted = fields if self.tangent.metric is None else fields @ self.tangent.metric
        return np.linalg.solve(self.gram, weighted @ np.asarray(X, dtype=float))


def local_frame(F: Immersion, u, tol: Tolerance = DEFAULT_TOLERANCE) -> LocalFrame:
    space = F.space
    u = F.params(u)
    x = F.point(u)
    d = F.differential(u)
    fields = space.pushforward(x, d).reshape(F.param_dim, space.chart_dim)
    metric = space.metric_matrix(x)
    tangent = orthonormalize(list(fields), tol=tol, metric=metric, ambient_dim=space.chart_dim)
    if tangent.dim < F.param_dim:
        raise RankDeficiencyError(F.param_dim, tangent.dim, location=u.tolist())

    normal = complement(tangent, within=space.tangent_space(x), tol=tol)
    return LocalFrame(u, x, d, fields, tangent, normal)


def tangent_space(F: Immersion, u, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """
    Orthonormalized image of the differential at ``u``.

    Raises:
        :class:`~codim.exceptions.RankDeficiencyError`: When the differential has rank < m.
    """
    return local_frame(F, u, tol=tol).tangent


def normal_space(F: Immersion, u, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    return local_frame(F, u, tol=tol).normal


def covariant_hessians(F: Immersion, frame: LocalFrame) -> np.ndarray:
    """
    ``∇̄_{∂_i} ∂_j F`` for all coordinate pairs, shape ``(m, m, chart_dim)``.
    """
    m = F.param_dim
    second = F.second_derivatives(frame.u)
    result = np.zeros_like(second)
    d = frame.derivatives
    for i in range(m):
        for j in range(i, m):
            value = F.space.covariant_hessian(frame.point, d[i], d[j], second[i, j])
            result[i, j] = result[j, i] = value

    return result


def alpha_coordinates(F: Immersion, u, frame: LocalFrame | None = None) -> np.ndarray:
    """
    The second fundamental form on coordinate fields, ``α(X_i, X_j)``.
    """
    frame = frame or local_frame(F, u)
    hessians = covariant_hessians(F, frame)
    m = F.param_dim
    result = np.zeros_like(hessians)
    for i in range(m):
        for j in range(i, m):
            result[i, j] = result[j, i] = project(frame.normal, hessians[i, j])

    return result


def second_fundamental_form(F: Immersion, u, X: Vec, Y: Vec) -> Vec:
    """
    ``α(X, Y)``, the normal part of ``∇̄_X Y`` (Gauss formula).
    """
    frame = local_frame(F, u)
    a = frame.coefficients(X)
    b = frame.coefficients(Y)
    alpha = alpha_coordinates(F, u, frame=frame)
    return np.einsum("i,j,ijk->k", a, b, alpha)


def _normal_extension(F: Immersion, xi: Vec) -> NormalField:
    def field(u: np.ndarray) -> np.ndarray:
        return project(normal_space(F, u), xi)

    return field


def _directional_derivative(field: NormalField, u: np.ndarray, a: np.ndarray, h: float) -> Vec:
    return (field(u + h * a) - field(u - h * a)) / (2 * h)


def shape_operator(F: Immersion, u, xi: Vec, X: Vec) -> Vec:
    """
    ``A_ξ X = -(∇̄_X ξ)^T`` (Weingarten formula). ``ξ`` is extended by projecting
    the fixed chart vector onto nearby normal spaces.
    """
    frame = local_frame(F, u)
    xi = np.asarray(xi, dtype=float)
    a = frame.coefficients(X)
    field = _normal_extension(F, xi)
    velocity = a @ frame.derivatives
    value = field(frame.u)
    derivative = _directional_derivative(field, frame.u, a, F.fd_step2)
    ambient = F.space.covariant_derivative(frame.point, velocity, value, derivative)
    return -project(frame.tangent, ambient)


def normal_derivative(F: Immersion, u, X: Vec, field: NormalField) -> Vec:
    """
    ``∇⊥_X ξ`` for a normal field ``ξ`` given as a function of the parameter point.
    """
    frame = local_frame(F, u)
    a = frame.coefficients(X)
    velocity = a @ frame.derivatives
    value = np.asarray(field(frame.u), dtype=float)
    derivative = _directional_derivative(field, frame.u, a, F.fd_step)
    ambient = F.space.covariant_derivative(frame.point, velocity, value, derivative)
    return project(frame.normal, ambient)


def first_normal_space(F: Immersion, u, tol: Tolerance | None = None) -> Subspace:
    """
    Rank-revealed span of ``α(TM × TM)`` at ``u``.
    """
    tol = tol or Tolerance(rank_rel=DEFAULT_RANK_REL, floor=FIRST_NORMAL_FLOOR / F.space.scale)
    frame = local_frame(F, u)
    alpha = alpha_coordinates(F, u, frame=frame)
    m = F.param_dim
    values = [alpha[i, j] for i in range(m) for j in range(i, m)]
    metric = frame.normal.metric
    if not values:
        return Subspace.empty(F.space.chart_dim, metric=metric)

    return orthonormalize(values, tol=tol, metric=metric, ambient_dim=F.space.chart_dim)


def mean_curvature(F: Immersion, u) -> Vec:
    """
    ``H = tr α / m``; the zero vector for points (``m = 0``).
    """
    frame = local_frame(F, u)
    if F.param_dim == 0:
        return np.zeros(F.space.chart_dim)

    alpha = alpha_coordinates(F, u, frame=frame)
    inverse = np.linalg.inv(frame.gram)
    return np.einsum("ij,ijk->k", inverse, alpha) / F.param_dim


def normal_frame_along(
    F: Immersion,
    params: np.ndarray,
    frame: NormalField | None = None,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> list[Subspace]:
    """
    Orthonormal normal frames at consecutive parameter samples, each rotated to best
    match its predecessor (orthogonal Procrustes).

    Args:
        F: The immersion.
        params: Parameter samples, shape ``(N, m)``.
        frame: Rows spanning the subbundle at a parameter point; the whole normal space
          when omitted.
        config: ``frame_jump`` bounds the subspace residual between neighbours.

    Raises:
        :class:`~codim.exceptions.FrameDiscontinuityError`
    """
    frames: list[Subspace] = []
    for index, u in enumerate(np.atleast_2d(params)):
        local = local_frame(F, u)
        if frame is None:
            current = local.normal
        else:
            rows = [project(local.normal, row) for row in np.atleast_2d(frame(local.u))]
            current = orthonormalize(
                rows, metric=local.normal.metric, ambient_dim=F.space.chart_dim
            )

        if frames and current.dim:
            previous = frames[-1]
            jump = subspace_residual(current, previous) if current.dim == previous.dim else 1.0
            if jump > config.frame_jump:
                raise FrameDiscontinuityError(index - 1, jump, config.frame_jump)

            weighted = current.basis if current.metric is None else current.basis @ current.metric
            rotation, _ = orthogonal_procrustes(weighted.T, previous.basis.T)
            current = Subspace(rotation.T @ current.basis, metric=current.metric)

        frames.append(current)

    return frames
