"""First and second statistical moments of a signal class.

A class of random signals is summarized by its mean m, correlation
operator K = E[xx^T], and covariance operator R = E[(x-m)(x-m)^T].
These satisfy the rank-one split K = R + ||m||^2 * p_mbar, where p_mbar
projects onto the mean direction. Expected signal energy through any
symmetric operator A is the trace functional E<Ax,x> = tr(KA).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, EmptyDataset, NotPSD
from .spectral import sym_eig, sym_matrix

# PSD slack for estimated/validated operators, relative to the trace.
_PSD_RTOL = 1e-9


@dataclass(frozen=True)
class MomentSummary:
    """Mean, correlation and covariance of one class.

    `count` is the number of samples behind an empirical estimate, or 0
    when the moments were supplied analytically.
    """

    mean: np.ndarray
    correlation: np.ndarray
    covariance: np.ndarray
    count: int

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


def estimate_moments(samples: Iterable) -> MomentSummary:
    """Empirical moments of a sample set (rows are observations).

    Uses plain 1/N averaging, so mean, correlation and covariance obey
    K = R + m m^T as an algebraic identity of the estimators.
    """
    try:
        x = np.atleast_2d(np.asarray(samples, dtype=float))
    except (ValueError, TypeError) as exc:
        raise DimensionMismatch("samples must share one dimension") from exc
    if x.size == 0:
        raise EmptyDataset("cannot estimate moments from no samples")
    if x.ndim != 2:
        raise DimensionMismatch("samples must be a sequence of equal-length vectors")
    mean = x.mean(axis=0)
    correlation = sym_matrix(x.T @ x / x.shape[0])
    centered = x - mean
    covariance = sym_matrix(centered.T @ centered / x.shape[0])
    return MomentSummary(mean, correlation, covariance, x.shape[0])


def analytic_moments(mean: Iterable, covariance: Iterable) -> MomentSummary:
    """Moments of a class given in closed form.

    The correlation operator is derived from the rank-one split:
    K = R + ||m||^2 * p_mbar, i.e. K = R + m m^T.
    """
    m = np.asarray(mean, dtype=float)
    r = sym_matrix(covariance)
    if m.ndim != 1 or r.shape[0] != m.shape[0]:
        raise DimensionMismatch("mean and covariance dimensions differ")
    smallest = sym_eig(r).eigenvalues[-1]
    if smallest < -_PSD_RTOL * max(1.0, np.trace(r)):
        raise NotPSD(f"covariance has eigenvalue {smallest}")
    k = sym_matrix(r + np.outer(m, m))
    return MomentSummary(m, k, r, 0)


def expected_quadratic(a: Iterable, k: Iterable) -> float:
    """Expected energy E<Ax,x> through the operator A, i.e. tr(KA)."""
    a = sym_matrix(a)
    k = sym_matrix(k)
    if a.shape != k.shape:
        raise DimensionMismatch(f"operator shapes differ: {a.shape} vs {k.shape}")
    return float(np.trace(k @ a))
