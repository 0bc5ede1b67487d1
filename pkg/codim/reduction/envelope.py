"""The envelope ``N = exp⊥(V₀)`` of a normal subbundle.

``N`` is sampled through the map ``Φ(u, s) = exp_{F(u)}(Σ s_j ξ_j(u))`` where
``ξ_j`` is an orthonormal frame of ``V``. ``Φ`` is wrapped as an
:class:`~codim.submanifold.immersion.Immersion` of dimension ``m + k``, so the
second fundamental form of ``N`` is computed by the same code as that of ``M``.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from codim.exceptions import EnvelopeRankError, RankDeficiencyError
from codim.geomcore import orthonormalize
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.report import CheckReport
from codim.reduction.hypotheses import bundle_sum
from codim.reduction.reports import make_report
from codim.submanifold.bundle import NormalSubbundle
from codim.submanifold.extrinsic import alpha_coordinates, local_frame
from codim.submanifold.immersion import Immersion

logger = logging.getLogger(__name__)


@dataclass
class Envelope:
    immersion: Immersion
    bundle: NormalSubbundle
    epsilon: float
    resolution: int
    parametrization: Immersion
    """
    ``Φ`` as an immersion of the box ``domain(F) × [-ε/√k, ε/√k]^k``.
    """

    halvings: int = 0

    @property
    def dim(self) -> int:
        return self.immersion.param_dim + self.bundle.rank

    @property
    def space(self):
        return self.immersion.space

    def split(self, w) -> tuple[np.ndarray, np.ndarray]:
        w = self.parametrization.params(w)
        m = self.immersion.param_dim
        return w[:m], w[m:]

    def point(self, u, s) -> np.ndarray:
        return self.parametrization.point(np.concatenate([np.atleast_1d(u), np.atleast_1d(s)]))

    def grid(self) -> np.ndarray:
        return self.parametrization.grid(self.resolution)

    def zero_section_defect(self, u) -> float:
        u = self.immersion.params(u)
        on_n = self.point(u, np.zeros(self.bundle.rank))
        return float(np.max(np.abs(on_n - self.immersion.point(u)), initial=0.0))

    def tangent_space(self, w):
        return local_frame(self.parametrization, w).tangent


def _sampling_map(F: Immersion, V: NormalSubbundle, epsilon: float) -> Immersion:
    m, k = F.param_dim, V.rank
    half = epsilon / math.sqrt(k) if k else 0.0
    domain = [*(F.domain or []), *([(-half, half)] * k)]

    def fn(w: np.ndarray) -> np.ndarray:
        u, s = w[:m], w[m:]
        x = F.point(u)
        if k == 0:
            return x

        return F.space.exp(x, s @ V.orthonormal_frame(u))

    return Immersion(
        F.space,
        m + k,
        fn,
        fd_step=F.fd_step,
        fd_step2=F.fd_step2,
        domain=domain if m + k else None,
        name=f"exp⊥({V.name or 'V'})",
    )


def build_envelope(
    F: Immersion,
    V: NormalSubbundle,
    epsilon: float = 0.2,
    resolution: int = 5,
    config: NumericsConfig = DEFAULT_CONFIG,
    hypotheses: Sequence[CheckReport] = (),
) -> Envelope:
    """
    Sample ``N = exp⊥(V₀)`` and make sure ``Φ`` is an immersion at every grid node.

    ``epsilon`` is halved (at most ``config.shrink_limit`` times) until the differential
    of ``Φ`` has rank ``m + k`` everywhere. Failed ``hypotheses`` reports are logged but
    do not stop the construction, so envelopes of counterexamples can be inspected too.

    Raises:
        :class:`~codim.exceptions.EnvelopeRankError`
    """
    if F.param_dim and F.domain is None:
        raise ValueError(f"{F!r} needs a domain to build an envelope.")

    for report in hypotheses:
        if not report.passed:
            logger.warning(
                "Building envelope although '%s' did not pass (residual %.3e).",
                report.name,
                report.residual,
            )

    for attempt in range(config.shrink_limit + 1):
        parametrization = _sampling_map(F, V, epsilon)
        try:
            for w in parametrization.grid(resolution):
                local_frame(parametrization, w, tol=config.tolerance)

        except RankDeficiencyError as err:
            if attempt == config.shrink_limit:
                raise EnvelopeRankError(epsilon, attempt) from err

            logger.warning(
                "Envelope rank deficient at %s with epsilon %.3e; halving.", err.location, epsilon
            )
            epsilon /= 2
            continue

        logger.debug("Envelope of dimension %d, epsilon %.3e", F.param_dim + V.rank, epsilon)
        return Envelope(F, V, epsilon, resolution, parametrization, halvings=attempt)

    raise EnvelopeRankError(epsilon, config.shrink_limit)


def check_totally_geodesic(
    env: Envelope,
    config: NumericsConfig = DEFAULT_CONFIG,
    seed: int = 0,
    random_pairs: int = 3,
) -> CheckReport:
    """
    Worst ``|α_N(X, Y)|`` over unit tangent pairs: all pairs of an orthonormal basis of
    ``T N`` plus ``random_pairs`` seeded random pairs per node.
    """
    rng = np.random.default_rng(seed)
    Phi = env.parametrization
    space = env.space
    samples = []
    trace = []
    for index, w in enumerate(env.grid()):
        frame = local_frame(Phi, w)
        alpha = alpha_coordinates(Phi, w, frame=frame)
        basis = frame.tangent.basis
        coefficients = np.array([frame.coefficients(e) for e in basis])
        pairs = [(i, j) for i in range(len(basis)) for j in range(i, len(basis))]
        worst = 0.0
        for i, j in pairs:
            value = np.einsum("a,b,abk->k", coefficients[i], coefficients[j], alpha)
            residual = space.norm(frame.point, value)
            samples.append(((*w, i, j), residual))
            worst = max(worst, residual)

        for _ in range(random_pairs if len(basis) else 0):
            a, b = (rng.normal(size=len(basis)) for _ in range(2))
            a /= np.linalg.norm(a)
            b /= np.linalg.norm(b)
            value = np.einsum("a,b,abk->k", a @ coefficients, b @ coefficients, alpha)
            residual = space.norm(frame.point, value)
            samples.append((w, residual))
            worst = max(worst, residual)

        trace.append((float(index), worst))

    return make_report(
        "totally_geodesic",
        samples,
        config=config,
        details={"epsilon": env.epsilon, "dim": env.dim, "halvings": env.halvings},
        trace=trace,
    )


def check_dimension(env: Envelope, config: NumericsConfig = DEFAULT_CONFIG) -> CheckReport:
    """
    ``rank dΦ`` against ``rank(TM ⊕ V)`` at every node.
    """
    Phi = env.parametrization
    space = env.space
    m = env.immersion.param_dim
    samples = []
    for w in env.grid():
        x = Phi.point(w)
        rank = orthonormalize(
            list(space.pushforward(x, Phi.differential(w))),
            tol=config.tolerance,
            metric=space.metric_matrix(x),
            ambient_dim=space.chart_dim,
        ).dim
        expected = bundle_sum(env.immersion, env.bundle, w[:m]).dim
        samples.append((w, float(abs(rank - expected))))

    return make_report("dimension", samples, config=config, details={"expected_rank": env.dim})
