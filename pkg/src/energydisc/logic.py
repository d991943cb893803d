"""Fuzzy logic on the lattice of orthogonal projections.

Every linear subspace, through its projector P, defines a fuzzy set
whose membership function is the passed energy mu(x) = <Px,x> = ||Px||^2.
Projectors are partially ordered by P <= Q iff <Px,x> <= <Qx,x> for all
x; under that order every pair has an infimum (range intersection) and a
supremum (range sum), and I - P is the negation. Meet and join are
computed from the spectrum of P + Q: the intersection is its eigenvalue-2
eigenspace, the sum of ranges its nonzero eigenspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .spectral import Projector, complement, projector_from_basis, sym_eig, sym_matrix

# Absolute eigenvalue classification tolerance; spectra of P + Q live in
# [0, 2], so an absolute cutoff is well-scaled.
_EIG_ATOL = 1e-8


def _check_same_dim(p: Projector, q: Projector) -> None:
    if p.dim != q.dim:
        raise DimensionMismatch(f"projector dims differ: {p.dim} vs {q.dim}")


def membership(p: Projector, x) -> float:
    """Energy of x passed by P: <Px,x>, always within [0, ||x||^2]."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != p.dim:
        raise DimensionMismatch(f"vector of length {x.shape} vs dim {p.dim}")
    px = p.matrix @ x
    # ||Px||^2 keeps the value nonnegative; cap at ||x||^2 against roundoff
    return min(float(px @ px), float(x @ x))


def meet(p: Projector, q: Projector) -> Projector:
    """Greatest lower bound: projector onto ran(P) intersected with ran(Q)."""
    _check_same_dim(p, q)
    values, vectors = sym_eig(p.matrix + q.matrix)
    keep = values >= 2.0 - _EIG_ATOL
    return projector_from_basis(list(vectors[:, keep].T), dim=p.dim)


def join(p: Projector, q: Projector) -> Projector:
    """Least upper bound: projector onto ran(P) + ran(Q)."""
    _check_same_dim(p, q)
    values, vectors = sym_eig(p.matrix + q.matrix)
    keep = values > _EIG_ATOL
    return projector_from_basis(list(vectors[:, keep].T), dim=p.dim)


def leq(p: Projector, q: Projector) -> bool:
    """Operator order: P <= Q iff <Px,x> <= <Qx,x> for every x."""
    _check_same_dim(p, q)
    smallest = sym_eig(sym_matrix(q.matrix - p.matrix)).eigenvalues[-1]
    return bool(smallest >= -_EIG_ATOL)


@dataclass(frozen=True)
class FuzzyProposition:
    """A subspace read as a fuzzy set, with the lattice ops as connectives."""

    projector: Projector
    label: str = ""

    def membership(self, x) -> float:
        return membership(self.projector, x)

    def __and__(self, other: "FuzzyProposition") -> "FuzzyProposition":
        label = f"({self.label} & {other.label})" if self.label or other.label else ""
        return FuzzyProposition(meet(self.projector, other.projector), label)

    def __or__(self, other: "FuzzyProposition") -> "FuzzyProposition":
        label = f"({self.label} | {other.label})" if self.label or other.label else ""
        return FuzzyProposition(join(self.projector, other.projector), label)

    def __invert__(self) -> "FuzzyProposition":
        label = f"~{self.label}" if self.label else ""
        return FuzzyProposition(complement(self.projector), label)

    def __le__(self, other: "FuzzyProposition") -> bool:
        return leq(self.projector, other.projector)
