"""Synthetic two-class datasets and CSV persistence.

Randomness comes from numpy's PCG64 generator (the `default_rng`
stream), seeded explicitly: one seed, one byte-identical dataset. The
two generators cover the classic benchmark geometries: two Gaussian
clouds with orthogonal means and a shared covariance, and a fixed
signal in white noise versus the noise alone.

CSV layout: UTF-8, '\\n' newlines, mandatory header ``label,x1,...,xn``,
one sample per row, labels in {1,2}, floats written with 17 significant
digits so values survive a round trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidParameter,
    LabelError,
    NotPSD,
    ParseError,
    ZeroSignal,
)
from .spectral import sym_eig, sym_matrix

_FLOAT_FMT = "%.17g"
_ZERO_NORM = 1e-12


@dataclass(frozen=True)
class LabeledDataset:
    """Feature rows with class labels in {1, 2}."""

    labels: np.ndarray
    features: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=int)
        features = np.asarray(self.features, dtype=float)
        if features.ndim != 2:
            raise DimensionMismatch("features must be a 2-d array of row vectors")
        if labels.ndim != 1 or labels.shape[0] != features.shape[0]:
            raise DimensionMismatch("labels and features row counts differ")
        bad = np.setdiff1d(labels, (1, 2))
        if bad.size:
            raise LabelError(f"labels must be 1 or 2, found {bad[0]}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "features", features)

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    def __len__(self) -> int:
        return self.features.shape[0]

    def class_features(self, label: int) -> np.ndarray:
        return self.features[self.labels == label]


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic PCG64 stream for the given 64-bit seed."""
    return np.random.default_rng(seed)


def _psd_factor(covariance: np.ndarray) -> np.ndarray:
    """Matrix L with L L^T equal to the (validated PSD) covariance."""
    values, vectors = sym_eig(covariance)
    if values[-1] < -1e-9 * max(1.0, float(np.trace(covariance))):
        raise NotPSD(f"covariance has eigenvalue {values[-1]}")
    return vectors * np.sqrt(np.clip(values, 0.0, None))


def gen_example1(
    n: int,
    m1: Iterable,
    m2: Iterable,
    covariance: Iterable,
    per_class: int,
    seed: int,
) -> LabeledDataset:
    """Two Gaussian classes with orthogonal means and a shared covariance."""
    m1 = np.asarray(m1, dtype=float)
    m2 = np.asarray(m2, dtype=float)
    if m1.shape != (n,) or m2.shape != (n,):
        raise DimensionMismatch("means must have length n")
    if abs(float(m1 @ m2)) > 1e-9 * np.linalg.norm(m1) * np.linalg.norm(m2):
        raise InvalidParameter("class means must be orthogonal")
    cov = sym_matrix(covariance)
    if cov.shape != (n, n):
        raise DimensionMismatch("covariance must be n-by-n")
    factor = _psd_factor(cov)
    rng = make_rng(seed)
    rows1 = m1 + rng.standard_normal((per_class, n)) @ factor.T
    rows2 = m2 + rng.standard_normal((per_class, n)) @ factor.T
    labels = np.repeat([1, 2], per_class)
    return LabeledDataset(labels, np.vstack([rows1, rows2]))


def gen_example2(
    n: int, a: Iterable, sigma2: float, per_class: int, seed: int
) -> LabeledDataset:
    """Signal-plus-white-noise class versus pure white noise.

    Class 1 draws a + eta, class 2 draws eta, with eta zero-mean Gaussian
    of covariance sigma2 * I.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (n,):
        raise DimensionMismatch("signal vector must have length n")
    if sigma2 <= 0.0:
        raise InvalidParameter("noise variance must be positive")
    rng = make_rng(seed)
    sigma = np.sqrt(sigma2)
    rows1 = a + sigma * rng.standard_normal((per_class, n))
    rows2 = sigma * rng.standard_normal((per_class, n))
    labels = np.repeat([1, 2], per_class)
    return LabeledDataset(labels, np.vstack([rows1, rows2]))


def unit_normalized(data: LabeledDataset) -> LabeledDataset:
    """Rescale every row to the unit sphere; zero rows are an error."""
    norms = np.linalg.norm(data.features, axis=1)
    bad = np.nonzero(norms <= _ZERO_NORM)[0]
    if bad.size:
        raise ZeroSignal(f"cannot unit-normalize zero vector at row {bad[0] + 1}")
    return LabeledDataset(data.labels, data.features / norms[:, None])


def save_csv(data: LabeledDataset, path) -> None:
    n = data.dim
    header = "label," + ",".join(f"x{i + 1}" for i in range(n))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for label, row in zip(data.labels, data.features):
            fh.write(str(int(label)) + "," + ",".join(_FLOAT_FMT % v for v in row) + "\n")


def load_csv(path) -> LabeledDataset:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("missing header", 1)
    fields = lines[0].split(",")
    if fields[0] != "label" or len(fields) < 2:
        raise ParseError(f"bad header {lines[0]!r}", 1)
    n = len(fields) - 1
    if fields[1:] != [f"x{i + 1}" for i in range(n)]:
        raise ParseError(f"bad header {lines[0]!r}", 1)
    labels: list[int] = []
    rows: list[list[float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != n + 1:
            raise ParseError(f"expected {n + 1} fields, got {len(parts)}", lineno)
        try:
            label = int(parts[0])
        except ValueError as exc:
            raise ParseError(f"bad label {parts[0]!r}", lineno) from exc
        if label not in (1, 2):
            raise LabelError(f"label must be 1 or 2, got {label}", lineno)
        try:
            rows.append([float(v) for v in parts[1:]])
        except ValueError as exc:
            raise ParseError(f"bad number in row: {exc}", lineno) from exc
        labels.append(label)
    features = np.array(rows, dtype=float) if rows else np.zeros((0, n))
    return LabeledDataset(np.array(labels, dtype=int), features)
