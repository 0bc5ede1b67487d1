"""Curves in the envelope: transport of ``T N`` and homotopy sheets built from ``M``."""

import itertools
import logging
import math
from collections.abc import Callable, Sequence

import numpy as np

from codim.ambient.base import DiscretizedCurve
from codim.ambient.transport import transport_frame
from codim.exceptions import LoopOffEnvelopeError
from codim.geomcore import subspace_residual
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport
from codim.reduction.envelope import Envelope
from codim.reduction.holonomy import HomotopySheet
from codim.reduction.reports import make_report

logger = logging.getLogger(__name__)


def _bounds(env: Envelope) -> tuple[np.ndarray, np.ndarray]:
    domain = env.parametrization.domain
    if not domain:
        raise LoopOffEnvelopeError("A zero-dimensional envelope has no loops.")

    lo, hi = np.array(domain, dtype=float).T
    return lo, hi


def snap(env: Envelope, w, config: NumericsConfig = DEFAULT_CONFIG) -> np.ndarray:
    """
    Clip parameter points onto the envelope box, allowing ``snap_tol`` of overshoot.

    Raises:
        :class:`~codim.exceptions.LoopOffEnvelopeError`
    """
    lo, hi = _bounds(env)
    w = np.asarray(w, dtype=float)
    slack = config.snap_tol * env.space.scale
    outside = np.maximum(lo - w, w - hi)
    if np.any(outside > slack):
        raise LoopOffEnvelopeError(
            f"Loop parameter leaves the envelope by {float(np.max(outside)):.3e} "
            f"(snap tolerance {slack:.1e})."
        )

    return np.clip(w, lo, hi)


def loop_curve(
    env: Envelope,
    corners,
    samples_per_side: int = 16,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> DiscretizedCurve:
    """
    The image under ``Φ`` of the parameter polygon through ``corners`` (shape
    ``(K, m + k)``). Corners are declared breakpoints.
    """
    corners = snap(env, np.atleast_2d(corners), config=config)
    sides = len(corners) - 1
    if sides < 1:
        raise LoopOffEnvelopeError("A loop needs at least two corners.")

    Phi = env.parametrization

    def path(t: float) -> np.ndarray:
        side = min(int(t), sides - 1)
        return Phi.point(corners[side] + (t - side) * (corners[side + 1] - corners[side]))

    return DiscretizedCurve.from_path(
        path, 0.0, float(sides), num=sides * samples_per_side, breaks=range(1, sides)
    )


def default_loops(env: Envelope, count: int = 10) -> list[np.ndarray]:
    """
    Rectangles in the coordinate planes of the ``(u, s)`` box, centred in the box and
    growing in size; one-dimensional envelopes get out-and-back segments.
    """
    lo, hi = _bounds(env)
    center = (lo + hi) / 2
    half = (hi - lo) / 2
    dim = len(lo)
    planes = list(itertools.combinations(range(dim), 2)) or [(0,)]
    rounds = math.ceil(count / len(planes))
    loops = []
    for q in range(count):
        plane = planes[q % len(planes)]
        size = (q // len(planes) + 1) / (rounds + 1)
        a = center - size * half
        b = center + size * half
        if len(plane) == 1:
            i = plane[0]
            start, end = center.copy(), center.copy()
            start[i], end[i] = a[i], b[i]
            loops.append(np.array([start, end, start]))
            continue

        i, j = plane
        corners = []
        for x, y in [(a[i], a[j]), (b[i], a[j]), (b[i], b[j]), (a[i], b[j]), (a[i], a[j])]:
            w = center.copy()
            w[i], w[j] = x, y
            corners.append(w)

        loops.append(np.array(corners))

    return loops


def check_tangent_preservation(
    env: Envelope,
    loops: Sequence[np.ndarray] | None = None,
    config: NumericsConfig = DEFAULT_CONFIG,
    samples_per_side: int = 16,
) -> CheckReport:
    """
    Transport ``T N`` along parameter polygons in ``N`` and compare with ``T N`` at the end.

    Loops are given by their parameter corners; open polygons are compared against the
    tangent space at their last corner. :func:`default_loops` is used when none are given.
    """
    loops = default_loops(env) if loops is None else loops
    space = env.space
    samples = []
    trace = []
    for index, corners in enumerate(loops):
        corners = snap(env, np.atleast_2d(corners), config=config)
        curve = loop_curve(env, corners, samples_per_side=samples_per_side, config=config)
        start = env.tangent_space(corners[0])
        end = env.tangent_space(corners[-1])
        moved = transport_frame(space, curve, start, config=config)
        residual = subspace_residual(moved, end)
        logger.debug("Loop %d: tangent leakage %.3e", index, residual)
        samples.append((f"loop {index} from {np.round(corners[0], 6).tolist()}", residual))
        trace.append((float(index), residual))

    return make_report(
        "tangent_preservation",
        samples,
        config=config,
        details={"loops": len(loops)},
        trace=trace,
    )


def sheet_from_envelope(
    env: Envelope,
    parameter_loop: Callable[[float], np.ndarray] | None = None,
    coefficient_loop: Callable[[float], np.ndarray] | None = None,
    num_s: int = 64,
    num_t: int = 64,
) -> HomotopySheet:
    """
    The sheet that sweeps ``N`` by normal geodesics over a loop ``c`` in ``M``::

        f(s, t) = F(c(2st))                  for t <= 1/2
        f(s, t) = exp(F(c(s)), (2t - 1) ξ(s)) for t >= 1/2

    with ``ξ(s) = Σ_j coefficient_loop(s)_j ξ_j(c(s))``. Both loops must be smooth; the
    corner at ``t = 1/2`` is declared. Defaults are a small circle (or an out-and-back
    segment) around the centre of the domain and a coefficient loop inside ``V₀``.
    """
    F = env.immersion
    m, k = F.param_dim, env.bundle.rank
    lo, hi = np.array(F.domain, dtype=float).T if m else (np.zeros(0), np.zeros(0))
    center = (lo + hi) / 2
    radius = 0.25 * float(np.min(hi - lo)) if m else 0.0

    if parameter_loop is None:

        def parameter_loop(r: float) -> np.ndarray:
            u = center.copy()
            if m == 1:
                u[0] += radius * math.sin(2 * math.pi * r)
            elif m >= 2:
                u[0] += radius * (math.cos(2 * math.pi * r) - 1)
                u[1] += radius * math.sin(2 * math.pi * r)
            return u

    if coefficient_loop is None:
        half = env.epsilon / math.sqrt(k) if k else 0.0

        def coefficient_loop(s: float) -> np.ndarray:
            phases = 2 * math.pi * s + np.arange(k)
            return half * (0.5 + 0.4 * np.sin(phases))

    Phi = env.parametrization

    def fn(s: float, t: float) -> np.ndarray:
        if t <= 0.5:
            return F.point(parameter_loop(2 * s * t))

        return Phi.point(np.concatenate([parameter_loop(s), (2 * t - 1) * coefficient_loop(s)]))

    base = F.point(parameter_loop(0.0))
    return HomotopySheet(
        env.space, base, fn, breakpoints=(0.5,), num_s=num_s, num_t=num_t, name="envelope sweep"
    )
