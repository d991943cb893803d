"""Dense symmetric eigendecomposition and orthogonal projectors.

The eigensolver is a cyclic Jacobi iteration: adequate for the dense,
small-to-moderate operators used everywhere else in the package, and
dependency-free. Projectors are symmetric idempotent matrices with a
cached integer rank; they double as propositions of the projection
lattice (see :mod:`energydisc.logic`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix

# Convergence target for the Jacobi sweep, relative to the Frobenius
# norm of the input: off-diagonal mass below this is "diagonal".
_JACOBI_RTOL = 1e-14
_MAX_SWEEPS = 100

# Idempotency / trace-rank slack accepted by the Projector constructor.
_PROJ_ATOL = 1e-9
_RANK_ATOL = 1e-8

# First eigenvector component larger than this (in absolute value) is
# forced positive, making the decomposition deterministic.
_SIGN_EPS = 1e-12


def sym_matrix(entries: Iterable) -> np.ndarray:
    """Build an n-by-n real symmetric matrix.

    The input is symmetrized as (M + M^T)/2, so callers may pass a
    matrix that is symmetric only up to roundoff.

    Raises:
        InvalidMatrix: non-square input or non-finite entries.
    """
    m = np.array(entries, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidMatrix(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidMatrix("matrix entries must be finite")
    return (m + m.T) / 2.0


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order; eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def sym_eig(matrix: Iterable) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Rotations sweep the strict upper triangle until the off-diagonal
    Frobenius norm falls below 1e-14 * (1 + ||M||_F). Eigenvalues are
    returned in descending order; each eigenvector is normalized so its
    first component of absolute value > 1e-12 is positive.
    """
    a = sym_matrix(matrix)
    n = a.shape[0]
    v = np.eye(n)
    tol = _JACOBI_RTOL * (1.0 + np.linalg.norm(a, "fro"))
    # A pivot below this cannot keep the off-diagonal mass above tol.
    pivot_tol = tol / max(1, n * n)

    for _ in range(_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.square(a - np.diag(np.diag(a)))))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= pivot_tol:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                col_p = v[:, p].copy()
                col_q = v[:, q].copy()
                v[:, p] = c * col_p - s * col_q
                v[:, q] = s * col_p + c * col_q
    else:
        raise InvalidMatrix("Jacobi iteration failed to converge")

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = v[:, order]
    for j in range(n):
        lead = np.nonzero(np.abs(vectors[:, j]) > _SIGN_EPS)[0]
        if lead.size and vectors[lead[0], j] < 0.0:
            vectors[:, j] = -vectors[:, j]
    return EigenDecomposition(eigenvalues, vectors)


@dataclass(frozen=True)
class Projector:
    """Orthogonal projection: symmetric, idempotent, with integer rank."""

    matrix: np.ndarray
    rank: int

    def __post_init__(self):
        m = self.matrix
        if np.max(np.abs(m @ m - m), initial=0.0) > _PROJ_ATOL:
            raise InvalidMatrix("projector matrix is not idempotent")
        if abs(np.trace(m) - self.rank) > _RANK_ATOL:
            raise InvalidMatrix("projector trace does not match rank")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x


def projector_from_basis(vectors: Sequence, dim: int | None = None) -> Projector:
    """Projector onto the span of the given vectors.

    The input is orthonormalized by Gram-Schmidt; vectors that are
    linearly dependent on earlier ones (residual below 1e-10 times the
    largest input norm) are dropped, so the rank is the dimension of the
    span. An empty sequence gives the zero projector, in which case
    `dim` is required.
    """
    vecs = [np.asarray(u, dtype=float) for u in vectors]
    if vecs:
        n = vecs[0].shape[0]
        if dim is not None and dim != n:
            raise DimensionMismatch(f"dim={dim} but vectors have length {n}")
    elif dim is None:
        raise DimensionMismatch("empty basis needs an explicit dim")
    else:
        n = dim
    basis: list[np.ndarray] = []
    drop_tol = 1e-10 * max((np.linalg.norm(u) for u in vecs), default=0.0)
    for u in vecs:
        if u.ndim != 1 or u.shape[0] != n:
            raise DimensionMismatch("basis vectors must share one dimension")
        w = u.copy()
        for b in basis:
            w -= (b @ w) * b
        # second pass fights cancellation on nearly dependent inputs
        for b in basis:
            w -= (b @ w) * b
        norm = np.linalg.norm(w)
        if norm > drop_tol:
            basis.append(w / norm)
    p = np.zeros((n, n))
    for b in basis:
        p += np.outer(b, b)
    return Projector(sym_matrix(p), len(basis))


def zero_projector(dim: int) -> Projector:
    return Projector(np.zeros((dim, dim)), 0)


def identity_projector(dim: int) -> Projector:
    return Projector(np.eye(dim), dim)


def complement(p: Projector) -> Projector:
    """Orthogonal complement I - P (the lattice negation)."""
    n = p.dim
    return Projector(sym_matrix(np.eye(n) - p.matrix), n - p.rank)
