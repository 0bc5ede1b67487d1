"""The three hypotheses of the reduction theorem.

``N¹ ⊂ V``, ``∇⊥``-parallelism of ``V`` and curvature invariance of
``TM ⊕ V``. Each check samples a grid or a curve in parameter space and
reports the worst residual.
"""

import itertools
import logging

import numpy as np

from codim.ambient.base import SpaceModel
from codim.exceptions import FrameDiscontinuityError
from codim.geomcore import (
    Subspace,
    containment_residual,
    leakage,
    orthonormalize,
    span_sum,
    subspace_residual,
)
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport
from codim.reduction.reports import make_report
from codim.submanifold.bundle import NormalSubbundle
from codim.submanifold.extrinsic import first_normal_space, local_frame, normal_derivative
from codim.submanifold.immersion import Immersion

logger = logging.getLogger(__name__)

CURVATURE_ZERO = 1e-12
"""
``R̄(x, y) z`` counts as zero below this norm (unit inputs, model scale 1).
"""


def _grid(F: Immersion, grid: np.ndarray | None, resolution: int) -> np.ndarray:
    if grid is not None:
        return np.atleast_2d(np.asarray(grid, dtype=float)).reshape(-1, F.param_dim)

    return F.grid(resolution)


def check_first_normal_contained(
    F: Immersion,
    V: NormalSubbundle,
    grid: np.ndarray | None = None,
    config: NumericsConfig = DEFAULT_CONFIG,
    resolution: int = 9,
) -> CheckReport:
    """
    Worst ``subspace_residual(N¹(u), V(u))`` over the grid.

    Raises:
        :class:`~codim.exceptions.BundleRankError`: The bundle frame degenerates.
    """
    samples = []
    trace = []
    dims = set()
    for index, u in enumerate(_grid(F, grid, resolution)):
        first_normal = first_normal_space(F, u)
        dims.add(first_normal.dim)
        residual = subspace_residual(first_normal, V.validate(u))
        samples.append((u, residual))
        trace.append((float(index), residual))

    return make_report(
        "first_normal_contained",
        samples,
        config=config,
        details={"first_normal_dim": max(dims, default=0), "bundle_rank": V.rank},
        trace=trace,
    )


def check_parallel_subbundle(
    F: Immersion,
    V: NormalSubbundle,
    curve: np.ndarray | None = None,
    config: NumericsConfig = DEFAULT_CONFIG,
    resolution: int = 9,
) -> CheckReport:
    """
    Worst leakage of ``∇⊥_{c'} ξ_j`` out of ``V`` over the frame fields ``ξ_j``.

    Along an explicit parameter ``curve`` (shape ``(N, m)``) the derivative is taken in
    the curve direction and consecutive ``V`` spaces must not jump; without one every
    coordinate direction is tested at every grid node. Leakage is normalized by
    ``|ξ_j| |c'|``.

    Raises:
        :class:`~codim.exceptions.FrameDiscontinuityError`
    """
    if curve is not None:
        nodes = np.atleast_2d(np.asarray(curve, dtype=float)).reshape(-1, F.param_dim)
        if len(nodes) > 1:
            directions = [[d] for d in np.gradient(nodes, axis=0)]
        else:
            directions = [list(np.eye(F.param_dim))]
    else:
        nodes = F.grid(resolution)
        directions = [list(np.eye(F.param_dim))] * len(nodes)

    samples = []
    trace = []
    previous: Subspace | None = None
    for index, (u, dirs) in enumerate(zip(nodes, directions, strict=False)):
        space_u = V.validate(u)
        if curve is not None and previous is not None:
            jump = subspace_residual(space_u, previous)
            if jump > config.frame_jump:
                raise FrameDiscontinuityError(index - 1, jump, config.frame_jump)

        previous = space_u
        local = local_frame(F, u)
        rows = V.frame_vectors(u)
        worst = 0.0
        for direction in dirs:
            X = direction @ local.coordinate_fields
            speed = F.space.norm(local.point, X)
            if speed == 0:
                continue

            for j, row in enumerate(rows):

                def field(w: np.ndarray, j: int = j) -> np.ndarray:
                    return V.frame_vectors(w)[j]

                derivative = normal_derivative(F, u, X, field)
                size = F.space.norm(local.point, row) * speed
                residual = leakage(space_u, derivative, scale=size)
                worst = max(worst, residual)
                samples.append(((*u, j), residual))

        trace.append((float(index), worst))

    return make_report("parallel_subbundle", samples, config=config, trace=trace)


def curvature_invariance_residual(
    space: SpaceModel, p: np.ndarray, W: Subspace
) -> tuple[float, tuple[int, int, int] | None]:
    """
    Largest ``containment_residual(W, R̄(x, y) z)`` over basis triples, with its indices.
    """
    basis = W.basis
    zero = CURVATURE_ZERO / space.scale**2
    worst, where = 0.0, None
    for i, j in itertools.combinations(range(W.dim), 2):
        for k in range(W.dim):
            value = space.curvature(p, basis[i], basis[j], basis[k])
            if space.norm(p, value) < zero:
                continue

            residual = containment_residual(W, value)
            if residual > worst:
                worst, where = residual, (i, j, k)

    return worst, where


def check_curvature_invariant(
    space: SpaceModel,
    p: np.ndarray,
    W: Subspace,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> CheckReport:
    """
    Is ``R̄(W, W) W ⊆ W`` at ``p``?
    """
    residual, where = curvature_invariance_residual(space, p, W)
    location = "basis triple {}".format(where) if where else None
    return make_report(
        "curvature_invariant",
        [(location or "-", residual)],
        config=config,
        details={"dim": W.dim},
    )


def bundle_sum(F: Immersion, V: NormalSubbundle, u) -> Subspace:
    """
    ``T_uM ⊕ V_u`` at ``F(u)``.
    """
    local = local_frame(F, u)
    return span_sum(local.tangent, V.subspace(u))


def check_bundle_curvature_invariant(
    F: Immersion,
    V: NormalSubbundle,
    grid: np.ndarray | None = None,
    config: NumericsConfig = DEFAULT_CONFIG,
    resolution: int = 9,
) -> CheckReport:
    """
    Curvature invariance of ``TM ⊕ V`` at every grid node.
    """
    samples = []
    trace = []
    for index, u in enumerate(_grid(F, grid, resolution)):
        W = bundle_sum(F, V, u)
        residual, _ = curvature_invariance_residual(F.space, F.point(u), W)
        samples.append((u, residual))
        trace.append((float(index), residual))

    residuals = np.array([r for _, r in samples])
    details = {
        "dim": F.param_dim + V.rank,
        "median_residual": float(np.median(residuals)) if len(residuals) else 0.0,
    }
    return make_report(
        "curvature_invariant", samples, config=config, details=details, trace=trace
    )


def verify_space_form_redundancy(
    space: SpaceModel,
    seed: int = 0,
    trials: int = 20,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> CheckReport:
    """
    Random subspaces at random points; in a space form every one is curvature invariant.
    """
    rng = np.random.default_rng(seed)
    samples = []
    for trial in range(trials):
        p = space.random_point(rng)
        dim = int(rng.integers(1, space.dim + 1))
        vectors = [space.random_tangent(p, rng) for _ in range(dim)]
        W = orthonormalize(vectors, metric=space.metric_matrix(p), ambient_dim=space.chart_dim)
        residual, _ = curvature_invariance_residual(space, p, W)
        samples.append((f"trial {trial} (dim {W.dim})", residual))

    return make_report(
        "space_form_redundancy",
        samples,
        config=config,
        details={"space_form": space.is_space_form, "trials": trials},
    )
