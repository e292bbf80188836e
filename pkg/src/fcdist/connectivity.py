"""Coupling metrics collapsed to one symmetric weight matrix per band.

COH and iCOH come from the full-record cross-spectrum; PLV, PLI and AEC
from windowed analytic signals. Weights live in [0, 1]; metrics whose raw
value is signed (iCOH, AEC) keep the signed band/window average in
``signed_raw`` and fold to magnitude for the weight matrix. Every matrix
is built from one value per unordered pair and mirrored, so symmetry is
exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateEnvelope, TooShort
from .spectral import AnalyticRecord, Band, CoherencyMatrix, band_slice

METRICS = ("COH", "iCOH", "PLV", "PLI", "AEC")


@dataclass(frozen=True)
class WindowConfig:
    """Sliding-window protocol for the time-domain metrics."""

    window_seconds: float = 6.0
    overlap_seconds: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.overlap_seconds < self.window_seconds:
            raise ValueError("need 0 <= overlap_seconds < window_seconds")


# Per-protocol defaults: PLV uses non-overlapping windows, PLI and AEC a
# 0.5 s overlap.
PLV_WINDOW = WindowConfig(6.0, 0.0)
SLIDING_WINDOW = WindowConfig(6.0, 0.5)


@dataclass(frozen=True)
class ConnectivityMatrix:
    """Symmetric channel x channel weights for one metric and one band."""

    metric: str
    band: Band
    weights: np.ndarray = field(repr=False)
    signed_raw: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weights must be square")
        if np.max(np.abs(w - w.T), initial=0.0) > 1e-12:
            raise ValueError("weights must be symmetric")
        if np.any(w < 0.0) or np.any(w > 1.0):
            raise ValueError("weights must lie in [0, 1]")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        if self.signed_raw is not None:
            s = np.asarray(self.signed_raw, dtype=float)
            s.flags.writeable = False
            object.__setattr__(self, "signed_raw", s)

    @property
    def n_channels(self) -> int:
        return self.weights.shape[0]


def _mirror(upper: np.ndarray, diagonal: float) -> np.ndarray:
    """Symmetric matrix from its strict upper triangle plus a diagonal."""
    w = np.triu(upper, 1)
    w = w + w.T
    np.fill_diagonal(w, diagonal)
    return w


def window_starts(n_samples: int, fs: float, w: WindowConfig) -> tuple[np.ndarray, int]:
    """Start indices of full sliding windows and the window length."""
    win = int(round(w.window_seconds * fs))
    overlap = int(round(w.overlap_seconds * fs))
    if win < 2:
        raise ValueError("window shorter than two samples")
    step = win - overlap
    if n_samples < win:
        raise TooShort(f"{n_samples} samples < one {win}-sample window")
    n_windows = (n_samples - win) // step + 1
    return np.arange(n_windows) * step, win


def coherence_matrix(c: CoherencyMatrix, band: Band) -> ConnectivityMatrix:
    """Squared coherency magnitude averaged over the band bins."""
    idx = band_slice(c.freqs, band)
    w = (np.abs(c.mats[idx]) ** 2).mean(axis=0)
    w = _mirror(np.clip(w, 0.0, 1.0), diagonal=1.0)
    return ConnectivityMatrix(metric="COH", band=band, weights=w)


def icoh_matrix(
    c: CoherencyMatrix, band: Band, magnitude_per_bin: bool = False
) -> ConnectivityMatrix:
    """Imaginary coherency averaged over band bins, folded to magnitude.

    By default the signed imaginary parts are averaged first and the
    magnitude taken once; ``magnitude_per_bin`` instead averages |Im C(f)|
    per bin (the alternative band-collapse reading).
    """
    idx = band_slice(c.freqs, band)
    imag = c.mats[idx].imag
    signed = np.abs(imag).mean(axis=0) if magnitude_per_bin else imag.mean(axis=0)
    w = _mirror(np.clip(np.abs(signed), 0.0, 1.0), diagonal=0.0)
    return ConnectivityMatrix(metric="iCOH", band=band, weights=w, signed_raw=signed)


def plv_matrix(a: AnalyticRecord, w: WindowConfig = PLV_WINDOW) -> ConnectivityMatrix:
    """Phase-locking value: |mean unit phasor of the phase difference|.

    Computed per window and averaged across windows.
    """
    starts, win = window_starts(a.n_samples, a.fs, w)
    n = a.n_channels
    acc = np.zeros((n, n))
    for s in starts:
        u = np.exp(1j * a.phase[:, s : s + win])
        acc += np.abs(u @ u.conj().T) / win
    weights = _mirror(np.clip(acc / len(starts), 0.0, 1.0), diagonal=1.0)
    return ConnectivityMatrix(metric="PLV", band=a.band, weights=weights)


def _wrap_phase(d: np.ndarray) -> np.ndarray:
    """Wrap phase differences to (-pi, pi]."""
    d = np.mod(d, 2.0 * np.pi)
    d[d > np.pi] -= 2.0 * np.pi
    return d


# Phase differences below float rounding noise count as ties (sign 0), so
# channels that are exact scalar multiples of each other score 0 instead of
# picking up the deterministic rounding bias of atan2.
_PHASE_TIE = 1e-12


def pli_matrix(a: AnalyticRecord, w: WindowConfig = SLIDING_WINDOW) -> ConnectivityMatrix:
    """Phase-lag index: |mean sign of the wrapped phase difference|.

    sign(0) counts as 0; window values are averaged across windows. Blind
    to zero-lag coupling by construction.
    """
    starts, win = window_starts(a.n_samples, a.fs, w)
    n = a.n_channels
    acc = np.zeros((n, n))
    for s in starts:
        ph = a.phase[:, s : s + win]
        for i in range(n - 1):
            d = _wrap_phase(ph[i + 1 :] - ph[i])
            signs = np.sign(d)
            signs[np.abs(d) <= _PHASE_TIE] = 0.0
            acc[i, i + 1 :] += np.abs(signs.mean(axis=1))
    weights = _mirror(np.clip(acc / len(starts), 0.0, 1.0), diagonal=0.0)
    return ConnectivityMatrix(metric="PLI", band=a.band, weights=weights)


def aec_matrix(a: AnalyticRecord, w: WindowConfig = SLIDING_WINDOW) -> ConnectivityMatrix:
    """Amplitude envelope correlation, folded to magnitude.

    Pearson correlation of the envelopes per window, averaged across
    windows. Pair-windows with a constant envelope are skipped; a pair with
    no usable window at all is an error.
    """
    starts, win = window_starts(a.n_samples, a.fs, w)
    n = a.n_channels
    acc = np.zeros((n, n))
    count = np.zeros((n, n), dtype=int)
    for s in starts:
        env = a.envelope[:, s : s + win]
        centred = env - env.mean(axis=1, keepdims=True)
        norms = np.sqrt(np.sum(centred * centred, axis=1))
        ok = norms > 0.0
        z = np.zeros_like(centred)
        z[ok] = centred[ok] / norms[ok, None]
        valid = np.outer(ok, ok)
        acc += np.where(valid, z @ z.T, 0.0)
        count += valid
    off_diag = ~np.eye(n, dtype=bool)
    if np.any(count[off_diag] == 0):
        i, j = np.argwhere((count == 0) & off_diag)[0]
        raise DegenerateEnvelope(
            f"channel pair ({i}, {j}) had a constant envelope in every window"
        )
    signed = acc / count
    weights = _mirror(np.clip(np.abs(signed), 0.0, 1.0), diagonal=1.0)
    signed = _mirror(signed, diagonal=1.0)
    return ConnectivityMatrix(metric="AEC", band=a.band, weights=weights, signed_raw=signed)
