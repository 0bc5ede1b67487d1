"""Parallel transport along discretized curves.

Curves backed by a parametrization are integrated with classical RK4 on each
sample interval, ``steps_per_unit`` steps per unit arc length, with a
projection back onto the tangent space after every step. Smooth pieces are
integrated separately so corners only cost a one-sided derivative. Curves
given by samples alone are joined by geodesic chords and use the model's
closed-form transport along each chord.
"""

import logging
import math

import numpy as np

from codim.ambient.base import DiscretizedCurve, SpaceModel, TangentVector
from codim.exceptions import (
    BasePointMismatchError,
    CurveTooCoarseError,
    DimensionMismatchError,
    FrameDegenerationError,
)
from codim.geomcore import Subspace, Vec, as_vec, ensure_finite, orthonormalize
from codim.model.config import DEFAULT_CONFIG, NumericsConfig

logger = logging.getLogger(__name__)

FRAME_ABORT = 1e-4
"""
Orthonormality defect of a transported frame that aborts instead of correcting.
"""


def _rk4_step(
    space: SpaceModel,
    curve: DiscretizedCurve,
    piece: tuple[float, float],
    t: float,
    h: float,
    V: np.ndarray,
) -> np.ndarray:
    def rhs(time: float, value: np.ndarray) -> np.ndarray:
        return space.transport_rhs(curve.point(time), curve.velocity(time, piece), value)

    k1 = rhs(t, V)
    k2 = rhs(t + h / 2, V + h / 2 * k1)
    k3 = rhs(t + h / 2, V + h / 2 * k2)
    k4 = rhs(t + h, V + h * k3)
    return V + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _integrate_path(
    space: SpaceModel,
    curve: DiscretizedCurve,
    V: np.ndarray,
    config: NumericsConfig,
    history: list[np.ndarray] | None,
) -> np.ndarray:
    times = curve.times
    for k in range(len(times) - 1):
        t_a, t_b = float(times[k]), float(times[k + 1])
        piece = curve.piece_of(t_a)
        length = space.distance(curve.samples[k], curve.samples[k + 1])
        substeps = max(1, math.ceil(config.steps_per_unit * length / space.scale))
        h = (t_b - t_a) / substeps
        for j in range(substeps):
            t = t_a + j * h
            V = _rk4_step(space, curve, piece, t, h, V)
            V = space.tangent_projection(curve.point(t + h), V)

        if history is not None:
            history.append(V.copy())

    return space.align(curve.point(float(times[-1])), curve.end, V)


def _integrate_chords(
    space: SpaceModel,
    curve: DiscretizedCurve,
    V: np.ndarray,
    config: NumericsConfig,
    history: list[np.ndarray] | None,
) -> np.ndarray:
    max_step = config.max_step * space.scale
    for k, (x, y) in enumerate(zip(curve.samples, curve.samples[1:], strict=False)):
        v = space.log_map(x, y)
        step = space.norm(x, v)
        if step > max_step:
            raise CurveTooCoarseError(k, step, max_step)

        V = space.geodesic_transport(x, v, 1.0, V)
        V = space.tangent_projection(y, space.align(space.exp(x, v), y, V))
        if history is not None:
            history.append(V.copy())

    return V


def transport_vectors(
    space: SpaceModel,
    curve: DiscretizedCurve,
    vectors: np.ndarray,
    config: NumericsConfig = DEFAULT_CONFIG,
    record: bool = False,
) -> np.ndarray:
    """
    Transport the rows of ``vectors`` from the start to the end of ``curve``.

    Args:
        space: The ambient model.
        curve: The curve; its first sample is the common base point.
        vectors: Array of shape ``(k, chart_dim)`` tangent at ``curve.start``.
        config: Step sizes and limits.
        record: Return the transported rows at every sample instead of only the end.

    Returns:
        ``(k, chart_dim)`` or, with ``record``, ``(len(samples), k, chart_dim)``.
    """
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    if V.shape[1] != space.chart_dim:
        raise DimensionMismatchError(space.chart_dim, V.shape[1], context="transported vectors")

    V = space.tangent_projection(curve.start, V)
    history = [V.copy()] if record else None
    if curve.path is not None:
        V = _integrate_path(space, curve, V, config, history)
    else:
        V = _integrate_chords(space, curve, V, config, history)

    ensure_finite(V, context="parallel transport")
    if record:
        history[-1] = V
        return np.array(history)

    return V


def parallel_transport(
    space: SpaceModel,
    curve: DiscretizedCurve,
    v: TangentVector | Vec,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> TangentVector:
    """
    ``∇̄``-parallel transport of ``v`` from the start of ``curve`` to its end.
    """
    if isinstance(v, TangentVector):
        if v.base.shape != curve.start.shape or not np.allclose(
            v.base, curve.start, atol=1e-8 * max(space.scale, 1.0), rtol=0
        ):
            raise BasePointMismatchError("Vector is not based at the start of the curve.")

        direction = v.dir
    else:
        direction = as_vec(v, context="parallel_transport")

    space.validate_tangent(curve.start, direction)
    moved = transport_vectors(space, curve, direction[None, :], config=config)[0]
    return TangentVector(curve.end, moved)


def transport_frame(
    space: SpaceModel,
    curve: DiscretizedCurve,
    W: Subspace,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> Subspace:
    """
    Transport an orthonormal frame and re-orthonormalize it at the end.

    Raises:
        :class:`~codim.exceptions.FrameDegenerationError`: When the transported basis
          drifted from orthonormality by more than :data:`FRAME_ABORT`.
    """
    metric = space.metric_matrix(curve.end)
    if W.dim == 0:
        return Subspace.empty(space.chart_dim, metric=metric)

    moved = transport_vectors(space, curve, W.basis, config=config)
    raw = Subspace(moved, metric=metric)
    defect = raw.gram_defect()
    logger.debug(
        "Transported %d-frame along %d samples, defect %.3e", W.dim, len(curve.times), defect
    )
    if defect > FRAME_ABORT:
        raise FrameDegenerationError(len(curve.times) - 1, defect)

    return orthonormalize(list(moved), metric=metric, ambient_dim=space.chart_dim)


def square_loop(
    space: SpaceModel, p: Vec, x: Vec, y: Vec, h: float, samples_per_side: int = 16
) -> DiscretizedCurve:
    """
    The loop ``exp_p(a x + b y)`` around the coordinate square ``[0, h]^2``, ``x`` side first.
    """
    corners = np.array([[0.0, 0.0], [h, 0.0], [h, h], [0.0, h], [0.0, 0.0]])

    def path(t: float) -> np.ndarray:
        side = min(int(t), 3)
        a, b = corners[side] + (t - side) * (corners[side + 1] - corners[side])
        return space.exp(p, a * x + b * y)

    return DiscretizedCurve.from_path(path, 0.0, 4.0, num=4 * samples_per_side, breaks=(1, 2, 3))


def holonomy_square(
    space: SpaceModel,
    p: Vec,
    x: Vec,
    y: Vec,
    z: Vec,
    h: float,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> Vec:
    """
    Transport ``z`` once around :func:`square_loop`. For small ``h`` the result is
    ``z - h^2 R̄(x, y) z + O(h^3)``.
    """
    loop = square_loop(space, p, x, y, h)
    return transport_vectors(space, loop, np.asarray(z, dtype=float)[None, :], config=config)[0]
