"""Shared random generators and independent oracles for the test suite.

Everything here goes through numpy only (numpy.linalg.eigh/qr), so the
values produced are independent of the package's own Jacobi and
Gram-Schmidt code paths.
"""

import numpy as np

from energydisc import Projector


def max_abs(a) -> float:
    return float(np.max(np.abs(np.asarray(a)), initial=0.0))


def random_symmetric(rng, n, scale=1.0):
    m = rng.uniform(-scale, scale, size=(n, n))
    return (m + m.T) / 2.0


def random_psd(rng, n, scale=1.0):
    g = rng.standard_normal((n, n)) * scale
    return g.T @ g / n


def random_orthonormal(rng, n, k):
    """k orthonormal columns in R^n via numpy QR (oracle path)."""
    if k == 0:
        return np.zeros((n, 0))
    q, r = np.linalg.qr(rng.standard_normal((n, k)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def random_projector(rng, n, rank=None) -> Projector:
    if rank is None:
        rank = int(rng.integers(0, n + 1))
    q = random_orthonormal(rng, n, rank)
    return Projector((q @ q.T + (q @ q.T).T) / 2.0, rank)
