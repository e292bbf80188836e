"""Distribution statistics of connectivity weight vectors.

One connectivity matrix reduces to its strict upper triangle; the summary
is the mean weight, the population skewness and kurtosis (plain
standardized moments, no small-sample correction), and the normalized
Shannon entropy of a fixed 100-bin histogram on [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDistribution, NotSymmetric, RangeViolation

DEFAULT_BINS = 100


@dataclass(frozen=True)
class WeightVector:
    """Strict-upper-triangle weights of one connectivity matrix."""

    w: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float).ravel()
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if w.size and (w.min() < 0.0 or w.max() > 1.0):
            raise RangeViolation("weights outside [0, 1]")
        w.flags.writeable = False
        object.__setattr__(self, "w", w)

    @property
    def n_pairs(self) -> int:
        return self.w.size


@dataclass(frozen=True)
class DistributionSummary:
    """Shape summary of one weight vector.

    ``skewness`` and ``kurtosis`` are None for a zero-variance vector.
    """

    mcw: float
    skewness: float | None
    kurtosis: float | None
    entropy: float
    n_pairs: int

    @property
    def degenerate(self) -> bool:
        return self.skewness is None


def _values(w) -> np.ndarray:
    if isinstance(w, WeightVector):
        return w.w
    return np.asarray(w, dtype=float).ravel()


def upper_triangle_weights(matrix: np.ndarray) -> WeightVector:
    """Row-major strict upper triangle (i < j) of a symmetric matrix."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
        raise ValueError("need a square matrix with n >= 2")
    asym = np.max(np.abs(m - m.T))
    if asym > 1e-9:
        raise NotSymmetric(f"matrix asymmetric by {asym:.3g}")
    i, j = np.triu_indices(m.shape[0], k=1)
    return WeightVector(w=m[i, j])


def skewness(w) -> float:
    """Third standardized moment E(x - mu)^3 / sigma^3 (population form)."""
    x = _values(w)
    if x.size < 2:
        raise ValueError("need at least two values")
    d = x - x.mean()
    m2 = np.mean(d * d)
    if m2 == 0.0 or np.ptp(x) == 0.0:
        raise DegenerateDistribution("zero-variance sample")
    return float(np.mean(d**3) / m2**1.5)


def kurtosis(w) -> float:
    """Fourth standardized moment E(x - mu)^4 / sigma^4; normal -> 3."""
    x = _values(w)
    if x.size < 2:
        raise ValueError("need at least two values")
    d = x - x.mean()
    m2 = np.mean(d * d)
    if m2 == 0.0 or np.ptp(x) == 0.0:
        raise DegenerateDistribution("zero-variance sample")
    return float(np.mean(d**4) / (m2 * m2))


def shannon_entropy(w, n_bins: int = DEFAULT_BINS) -> float:
    """Normalized histogram entropy on [0, 1].

    Equal-width bins, the last bin closed on the right; empty bins
    contribute nothing. 0 = fully concentrated, 1 = uniform histogram.
    """
    x = _values(w)
    if x.size < 1:
        raise ValueError("need at least one value")
    if n_bins < 2:
        raise ValueError("need at least two bins")
    if x.min() < 0.0 or x.max() > 1.0:
        raise RangeViolation(
            f"weights span [{x.min():.6g}, {x.max():.6g}], outside [0, 1]"
        )
    counts, _ = np.histogram(x, bins=n_bins, range=(0.0, 1.0))
    p = counts[counts > 0] / x.size
    return float(-(p * np.log2(p)).sum() / np.log2(n_bins))


def summarize(w, n_bins: int = DEFAULT_BINS) -> DistributionSummary:
    """Bundle mean weight, skewness, kurtosis and entropy of one vector."""
    x = _values(w)
    entropy = shannon_entropy(x, n_bins)
    try:
        skew: float | None = skewness(x)
        kurt: float | None = kurtosis(x)
    except DegenerateDistribution:
        skew = None
        kurt = None
    return DistributionSummary(
        mcw=float(x.mean()),
        skewness=skew,
        kurtosis=kurt,
        entropy=entropy,
        n_pairs=x.size,
    )
