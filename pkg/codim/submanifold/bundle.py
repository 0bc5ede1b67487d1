from collections.abc import Callable

import numpy as np

from codim.exceptions import BundleRankError
from codim.geomcore import Subspace, containment_residual, orthonormalize, project
from codim.submanifold.extrinsic import local_frame
from codim.submanifold.immersion import Immersion

NORMALITY_TOL = 1e-6
"""
Allowed tangential part of a bundle frame vector, relative to its length.
"""


class NormalSubbundle:
    """
    A subbundle ``V ⊂ ν(M)`` given by ``rank`` spanning normal fields.

    ``frame(u)`` returns a ``(rank, chart_dim)`` array; rows need not be orthonormal.
    """

    def __init__(
        self,
        immersion: Immersion,
        frame: Callable[[np.ndarray], np.ndarray],
        rank: int,
        name: str = "",
    ):
        if rank < 0:
            raise BundleRankError("Bundle rank must be >= 0.")

        self.immersion = immersion
        self.frame = frame
        self.rank = rank
        self.name = name

    def __repr__(self) -> str:
        return f"<NormalSubbundle {self.name or 'V'} rank={self.rank} over {self.immersion!r}>"

    @classmethod
    def full(cls, immersion: Immersion) -> "NormalSubbundle":
        """
        The whole normal bundle, framed by the orthonormalized normal spaces.
        """
        rank = immersion.space.dim - immersion.param_dim

        def frame(u: np.ndarray) -> np.ndarray:
            return local_frame(immersion, u).normal.basis

        return cls(immersion, frame, rank, name="normal bundle")

    def frame_vectors(self, u) -> np.ndarray:
        u = self.immersion.params(u)
        rows = np.asarray(self.frame(u), dtype=float).reshape(-1, self.immersion.space.chart_dim)
        if rows.shape[0] != self.rank:
            raise BundleRankError(
                f"Frame at {u.tolist()} has {rows.shape[0]} vectors, expected {self.rank}."
            )

        return rows

    def validate(self, u, tol: float = NORMALITY_TOL) -> Subspace:
        """
        Check normality and independence of the frame at ``u``; return ``V_u``.

        Raises:
            :class:`~codim.exceptions.BundleRankError`
        """
        local = local_frame(self.immersion, u)
        rows = self.frame_vectors(local.u)
        for index, row in enumerate(rows):
            if np.allclose(row, 0):
                raise BundleRankError(f"Frame vector {index} vanishes at {local.u.tolist()}.")

            residual = containment_residual(local.normal, row)
            if residual > tol:
                raise BundleRankError(
                    f"Frame vector {index} is not normal at {local.u.tolist()} "
                    f"(residual {residual:.3e})."
                )

        return self._span(local, rows)

    def subspace(self, u) -> Subspace:
        """
        ``V_u``: the normal parts of the frame, orthonormalized.
        """
        local = local_frame(self.immersion, u)
        return self._span(local, self.frame_vectors(local.u))

    def _span(self, local, rows: np.ndarray) -> Subspace:
        normal_rows = [project(local.normal, row) for row in rows]
        span = orthonormalize(
            normal_rows, metric=local.normal.metric, ambient_dim=self.immersion.space.chart_dim
        )
        if span.dim != self.rank:
            raise BundleRankError(
                f"Frame at {local.u.tolist()} spans dimension {span.dim}, expected {self.rank}."
            )

        return span

    def orthonormal_frame(self, u) -> np.ndarray:
        """
        Gram-Schmidt of the raw frame at ``u``, smooth in ``u`` when the frame is.
        """
        u = self.immersion.params(u)
        point = self.immersion.point(u)
        span = orthonormalize(
            list(self.frame_vectors(u)),
            metric=self.immersion.space.metric_matrix(point),
            ambient_dim=self.immersion.space.chart_dim,
        )
        if span.dim != self.rank:
            raise BundleRankError(f"Frame at {u.tolist()} is rank deficient.")

        return span.basis
