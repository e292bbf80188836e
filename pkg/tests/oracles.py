"""Independent reference implementations used as test oracles.

Deliberately naive: plain loops, math.fsum, direct O(N^2) transforms.
Nothing here imports the code paths under test.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np


def naive_mean(xs) -> float:
    xs = list(map(float, xs))
    return math.fsum(xs) / len(xs)


def naive_skewness(xs) -> float:
    xs = list(map(float, xs))
    mu = naive_mean(xs)
    m2 = math.fsum((x - mu) ** 2 for x in xs) / len(xs)
    m3 = math.fsum((x - mu) ** 3 for x in xs) / len(xs)
    return m3 / m2**1.5


def naive_kurtosis(xs) -> float:
    xs = list(map(float, xs))
    mu = naive_mean(xs)
    m2 = math.fsum((x - mu) ** 2 for x in xs) / len(xs)
    m4 = math.fsum((x - mu) ** 4 for x in xs) / len(xs)
    return m4 / (m2 * m2)


def naive_entropy(xs, n_bins: int = 100) -> float:
    """Histogram entropy on [0, 1]; last bin closed, 0 log 0 = 0."""
    counts = [0] * n_bins
    for x in xs:
        b = int(x * n_bins)
        if b == n_bins:  # x == 1.0
            b -= 1
        counts[b] += 1
    n = len(list(xs))
    h = 0.0
    for c in counts:
        if c:
            p = c / n
            h -= p * math.log2(p)
    return h / math.log2(n_bins)


def naive_matmul(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    out = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0.0
            for k in range(a.shape[1]):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def naive_cross_spectrum(data, fs: float, segment_samples: int):
    """Averaged-periodogram cross-spectrum via an explicit O(N^2) DFT.

    Mirrors the contract: per-segment mean removal, bins k = 1..N/2-1,
    scale 2 / (K N^2). Returns (freqs, mats[n_freqs, n_ch, n_ch]).
    """
    data = np.asarray(data, dtype=float)
    n_ch, n_samples = data.shape
    n = segment_samples
    k_segments = n_samples // n
    bins = list(range(1, n // 2))
    mats = np.zeros((len(bins), n_ch, n_ch), dtype=complex)
    for s in range(k_segments):
        seg = data[:, s * n:(s + 1) * n]
        seg = [row - naive_mean(row) for row in seg]
        spectra = []
        for row in seg:
            x = []
            for k in bins:
                acc = 0j
                for t_idx in range(n):
                    acc += row[t_idx] * cmath.exp(-2j * math.pi * k * t_idx / n)
                x.append(acc)
            spectra.append(x)
        for bi in range(len(bins)):
            for i in range(n_ch):
                for j in range(n_ch):
                    mats[bi, i, j] += spectra[i][bi] * spectra[j][bi].conjugate()
    mats *= 2.0 / (k_segments * n * n)
    freqs = np.array([k * fs / n for k in bins])
    return freqs, mats


def pearson_r(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x - x.mean()
    dy = y - y.mean()
    return float((dx * dy).sum() / math.sqrt((dx * dx).sum() * (dy * dy).sum()))


def exact_permutation_pvalue(x, y) -> float:
    """Two-sided permutation p by full enumeration (small n only)."""
    r_obs = abs(pearson_r(x, y))
    hits = 0
    total = 0
    for perm in itertools.permutations(y):
        total += 1
        if abs(pearson_r(x, perm)) >= r_obs - 1e-12:
            hits += 1
    return hits / total


def mc_permutation_pvalue(x, y, n_draws: int, seed: int) -> float:
    """Two-sided Monte Carlo permutation p (vectorized draws)."""
    rng = np.random.default_rng(seed)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r_obs = abs(pearson_r(x, y))
    dx = x - x.mean()
    sx = math.sqrt((dx * dx).sum())
    perms = rng.permuted(np.tile(y, (n_draws, 1)), axis=1)
    dp = perms - perms.mean(axis=1, keepdims=True)
    r = (dp @ dx) / (np.sqrt((dp * dp).sum(axis=1)) * sx)
    return float(np.mean(np.abs(r) >= r_obs - 1e-12))


def count_windows(n_samples: int, win: int, step: int) -> int:
    """Count full windows by explicit simulation."""
    count = 0
    start = 0
    while start + win <= n_samples:
        count += 1
        start += step
    return count
