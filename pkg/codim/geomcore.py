"""Tolerance-aware linear algebra on tangent spaces.

Vectors are plain ``numpy`` arrays of chart coordinates. A :class:`Subspace`
stores an orthonormal basis together with the Gram matrix of the inner product
it is orthonormal for (``None`` means the chart dot product). Models whose
tangent inner product is not the dot product, the hyperboloid with its
Minkowski form for example, pass their Gram matrix explicitly.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from codim.exceptions import DimensionMismatchError, NonFiniteError
from codim.model.tolerance import DEFAULT_TOLERANCE, Tolerance

Vec = np.ndarray


def as_vec(value, context: str | None = None) -> Vec:
    vec = np.asarray(value, dtype=float)
    if vec.ndim != 1:
        raise DimensionMismatchError(1, vec.ndim, context=context or "expected a 1-d vector")

    return ensure_finite(vec, context=context)


def ensure_finite(value: np.ndarray, context: str | None = None) -> np.ndarray:
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"Non-finite entries in {context or 'result'}.")

    return value


def inner(u: Vec, v: Vec, metric: np.ndarray | None = None) -> float:
    if metric is None:
        return float(np.dot(u, v))

    return float(u @ metric @ v)


def norm(v: Vec, metric: np.ndarray | None = None) -> float:
    # Minkowski forms are only positive on tangent vectors; clip rounding.
    return float(np.sqrt(max(inner(v, v, metric), 0.0)))


@dataclass(frozen=True)
class Subspace:
    """
    A subspace given by an orthonormal basis (rows of ``basis``).
    """

    basis: np.ndarray
    metric: np.ndarray | None = None

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        if basis.ndim != 2:
            raise DimensionMismatchError(2, basis.ndim, context="subspace basis must be 2-d")

        if basis.shape[0] > basis.shape[1]:
            raise DimensionMismatchError(
                basis.shape[1], basis.shape[0], context="more basis vectors than dimensions"
            )

        ensure_finite(basis, context="subspace basis")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def empty(cls, ambient_dim: int, metric: np.ndarray | None = None) -> "Subspace":
        return cls(np.zeros((0, ambient_dim)), metric=metric)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def projector(self) -> np.ndarray:
        """
        Matrix ``P`` with ``P @ v == project(self, v)``.
        """
        weighted = self.basis if self.metric is None else self.basis @ self.metric
        return self.basis.T @ weighted

    def coordinates(self, v: Vec) -> np.ndarray:
        weighted = self.basis if self.metric is None else self.basis @ self.metric
        return weighted @ v

    def gram_defect(self) -> float:
        """
        Largest deviation of the basis Gram matrix from the identity.
        """
        if self.dim == 0:
            return 0.0

        weighted = self.basis if self.metric is None else self.basis @ self.metric
        gram = weighted @ self.basis.T
        return float(np.max(np.abs(gram - np.eye(self.dim))))

    def __iter__(self):
        return iter(self.basis)


def _check_dims(expected: int, vectors: Iterable[Vec], context: str):
    for vec in vectors:
        if vec.shape[-1] != expected:
            raise DimensionMismatchError(expected, vec.shape[-1], context=context)


def orthonormalize(
    vectors: Sequence[Vec] | np.ndarray,
    tol: Tolerance = DEFAULT_TOLERANCE,
    metric: np.ndarray | None = None,
    ambient_dim: int | None = None,
) -> Subspace:
    """
    Rank-revealing modified Gram-Schmidt with one re-orthogonalization pass.

    A vector is discarded when its norm after elimination drops below
    ``tol.rank_rel`` times the largest input norm, or below ``tol.floor``.

    Args:
        vectors: The spanning vectors.
        tol: Rank cutoffs.
        metric: Gram matrix of the inner product, ``None`` for the dot product.
        ambient_dim: Required when ``vectors`` is empty.

    Returns:
        :class:`Subspace`
    """
    vecs = [as_vec(v, context="orthonormalize") for v in vectors]
    if not vecs:
        if ambient_dim is None:
            raise DimensionMismatchError(1, 0, context="cannot infer dimension of empty span")

        return Subspace.empty(ambient_dim, metric=metric)

    dim = vecs[0].shape[0]
    _check_dims(dim, vecs, "orthonormalize inputs")
    if ambient_dim is not None and ambient_dim != dim:
        raise DimensionMismatchError(ambient_dim, dim, context="orthonormalize inputs")

    largest = max(norm(v, metric) for v in vecs)
    cutoff = max(tol.rank_rel * largest, tol.floor)
    basis: list[Vec] = []
    for vec in vecs:
        residual = vec.copy()
        for _ in range(2):
            for b in basis:
                residual = residual - inner(residual, b, metric) * b

        length = norm(residual, metric)
        if length <= cutoff or length == 0.0:
            continue

        basis.append(residual / length)

    if not basis:
        return Subspace.empty(dim, metric=metric)

    return Subspace(np.array(basis), metric=metric)


def project(W: Subspace, v: Vec) -> Vec:
    v = as_vec(v, context="project")
    _check_dims(W.ambient_dim, [v], "project")
    if W.dim == 0:
        return np.zeros_like(v)

    return W.basis.T @ W.coordinates(v)


def containment_residual(W: Subspace, v: Vec) -> float:
    """
    Relative distance ``|v - P_W v| / |v|`` in ``[0, 1]``; zero vectors give 0.
    """
    v = as_vec(v, context="containment_residual")
    _check_dims(W.ambient_dim, [v], "containment_residual")
    length = norm(v, W.metric)
    if length == 0.0:
        return 0.0

    rejection = v - project(W, v)
    return float(min(norm(rejection, W.metric) / length, 1.0))


def leakage(W: Subspace, v: Vec, scale: float = 1.0) -> float:
    """
    Absolute distance of ``v`` from ``W`` divided by ``scale``.
    """
    v = as_vec(v, context="leakage")
    _check_dims(W.ambient_dim, [v], "leakage")
    if scale <= 0:
        return 0.0

    return norm(v - project(W, v), W.metric) / scale


def subspace_residual(U: Subspace, W: Subspace) -> float:
    """
    Largest containment residual of ``U``'s basis in ``W``; 0 iff ``U ⊆ W`` up to tolerance.
    """
    if U.ambient_dim != W.ambient_dim:
        raise DimensionMismatchError(W.ambient_dim, U.ambient_dim, context="subspace_residual")

    if U.dim == 0:
        return 0.0

    return max(containment_residual(W, b) for b in U.basis)


def complement(
    W: Subspace, within: Subspace | None = None, tol: Tolerance = DEFAULT_TOLERANCE
) -> Subspace:
    """
    Orthonormal complement of ``W`` inside ``within`` (the whole chart space by default).
    """
    metric = W.metric
    if within is None:
        if metric is not None:
            raise DimensionMismatchError(
                W.ambient_dim, 0, context="complement needs a containing subspace"
            )
        spanning = np.eye(W.ambient_dim)
    else:
        if within.ambient_dim != W.ambient_dim:
            raise DimensionMismatchError(W.ambient_dim, within.ambient_dim, context="complement")
        spanning = within.basis

    seeds = [v - project(W, v) for v in spanning]
    # The cutoff is relative to the containing basis, which is unit length.
    result = orthonormalize(
        [*W.basis, *seeds], tol=tol, metric=metric, ambient_dim=W.ambient_dim
    )
    return Subspace(result.basis[W.dim :], metric=metric)


def span_sum(U: Subspace, W: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """
    Orthonormal basis of ``U + W``.
    """
    if U.ambient_dim != W.ambient_dim:
        raise DimensionMismatchError(U.ambient_dim, W.ambient_dim, context="span_sum")

    return orthonormalize([*U.basis, *W.basis], tol=tol, metric=U.metric, ambient_dim=U.ambient_dim)


def projectors_agree(U: Subspace, W: Subspace) -> float:
    """
    Max entrywise difference of the two orthogonal projectors.
    """
    return float(np.max(np.abs(U.projector - W.projector)))
