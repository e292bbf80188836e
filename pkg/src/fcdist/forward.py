"""Source assembly and forward projection to scalp channels.

Cortical activity is modelled as a stack of source rows; a gain matrix
maps sources to electrodes (scalp record = gain @ sources). Generators
here are pure functions of their arguments: same arguments, bit-identical
output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BandOutOfRange,
    EmptyRequest,
    InsufficientLibrary,
    InsufficientSamples,
    ShapeMismatch,
)
from .montages import Montage, get_montage

# Chunk size (rows) for streaming noise-source generation. Fixed so the
# random stream, and therefore the output, never depends on memory layout.
_NOISE_CHUNK = 256

# Softening constant in the inverse-square-distance gain surrogate.
_GAIN_EPS = 0.1


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class SourceLibrary:
    """Pool of candidate source time courses, one row per source."""

    data: np.ndarray = field(repr=False)  # (n_library, n_samples)
    fs: float
    origin: str = "synthetic"

    def __post_init__(self) -> None:
        data = np.atleast_2d(np.asarray(self.data, dtype=float))
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("library must hold at least one row and one sample")
        if not np.all(np.isfinite(data)):
            raise ValueError("library rows must be finite")
        if self.fs <= 0:
            raise ValueError("fs must be positive")
        object.__setattr__(self, "data", _freeze(data))

    @property
    def n_library(self) -> int:
        return self.data.shape[0]

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class SourceActivity:
    """Dipole activity matrix: active library rows plus Gaussian fill."""

    data: np.ndarray = field(repr=False)  # (n_sources, n_samples)
    fs: float
    n_active: int

    def __post_init__(self) -> None:
        data = np.atleast_2d(np.asarray(self.data, dtype=float))
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("need at least one source and one sample")
        if not np.all(np.isfinite(data)):
            raise ValueError("source rows must be finite")
        if self.fs <= 0:
            raise ValueError("fs must be positive")
        if not 0 <= self.n_active <= data.shape[0]:
            raise ValueError("n_active must lie in [0, n_sources]")
        object.__setattr__(self, "data", _freeze(data))

    @property
    def n_sources(self) -> int:
        return self.data.shape[0]

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class LeadField:
    """Gain matrix binding a montage to a source space."""

    gain: np.ndarray = field(repr=False)  # (n_channels, n_sources)
    montage: str
    channel_names: tuple[str, ...]

    def __post_init__(self) -> None:
        gain = np.atleast_2d(np.asarray(self.gain, dtype=float))
        if not np.all(np.isfinite(gain)):
            raise ValueError("gain entries must be finite")
        if gain.shape[0] != len(self.channel_names):
            raise ValueError("one channel name per gain row required")
        if np.any(np.all(gain == 0.0, axis=1)):
            raise ValueError("gain matrix has an all-zero row")
        object.__setattr__(self, "gain", _freeze(gain))
        object.__setattr__(self, "channel_names", tuple(self.channel_names))

    @property
    def n_channels(self) -> int:
        return self.gain.shape[0]

    @property
    def n_sources(self) -> int:
        return self.gain.shape[1]


@dataclass(frozen=True)
class MultichannelRecord:
    """Scalp-level multichannel time series."""

    data: np.ndarray = field(repr=False)  # (n_channels, n_samples)
    fs: float
    channel_names: tuple[str, ...]

    def __post_init__(self) -> None:
        data = np.atleast_2d(np.asarray(self.data, dtype=float))
        if not np.all(np.isfinite(data)):
            raise ValueError("record must be finite")
        if self.fs <= 0:
            raise ValueError("fs must be positive")
        if data.shape[0] != len(self.channel_names):
            raise ValueError("one channel name per row required")
        object.__setattr__(self, "data", _freeze(data))
        object.__setattr__(self, "channel_names", tuple(self.channel_names))

    @property
    def n_channels(self) -> int:
        return self.data.shape[0]

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]


def _spectral_noise(rng: np.random.Generator, amplitude: np.ndarray, n_samples: int) -> np.ndarray:
    """Stationary Gaussian noise with the given one-sided amplitude shape.

    Synthesized in the frequency domain (random phases), so circular
    shifts of the result are statistically equivalent to the original.
    """
    n_bins = amplitude.shape[0]
    coeff = amplitude * (rng.standard_normal(n_bins) + 1j * rng.standard_normal(n_bins))
    coeff[0] = 0.0
    x = np.fft.irfft(coeff, n=n_samples)
    sd = x.std()
    if sd > 0:
        x /= sd
    return x


def _resonator_amplitude(freqs: np.ndarray, f0: float, q: float = 5.0) -> np.ndarray:
    """Second-order resonator magnitude centred on f0."""
    ratio = freqs / f0
    return 1.0 / np.sqrt((1.0 - ratio**2) ** 2 + (ratio / q) ** 2)


def generate_synthetic_sources(
    n_sources: int,
    n_samples: int,
    fs: float,
    alpha_hz: float = 10.0,
    seed: int = 0,
) -> SourceLibrary:
    """Build a library of rhythm-bearing source time courses.

    The model imitates resting cortical activity: every row carries a steep
    1/f-like background; a sparse, per-call random fraction of rows also
    carries a strong narrowband rhythm near ``alpha_hz`` (individual peak
    frequency and bandwidth per row); and one shared narrowband rhythm is
    injected into all rows with per-row circular time lags of up to ~0.4 of
    a cycle, so channel pairs downstream see genuinely lag-coupled activity
    next to the instantaneous mixing. The rhythmic fraction and the shared
    rhythm's strength are drawn per call, so different seeds span a range
    of overall coupling levels. Deterministic in ``seed``.
    """
    if n_sources < 1:
        raise EmptyRequest("n_sources must be >= 1")
    if n_samples < 4:
        raise ValueError("n_samples must be >= 4")
    if not 0.0 < alpha_hz < fs / 2.0:
        raise BandOutOfRange(f"alpha_hz={alpha_hz} outside (0, {fs / 2.0})")

    rng = np.random.default_rng(seed)
    freqs = np.fft.rfftfreq(n_samples, d=1.0 / fs)

    # Background: power ~ 1/(f + 1)^1.7, flattened below ~1 Hz.
    background_amp = (freqs + 1.0) ** -0.85

    # Library-level character, drawn once per call: fraction of rows with a
    # strong rhythm, and the variance share of the shared lagged rhythm.
    rhythm_fraction = rng.uniform(0.03, 0.22)
    shared_level = rng.uniform(0.03, 0.11)

    # Shared rhythm: narrowband, peak placed well inside the band so its
    # energy stays within +/-25% of alpha_hz.
    f_shared = alpha_hz * rng.uniform(0.93, 1.17)
    shared = _spectral_noise(
        rng, _resonator_amplitude(freqs, f_shared, q=16.0), n_samples
    )

    # Per-row mixture: rhythmic rows get most of their variance from a
    # private narrowband rhythm, background rows almost none. The rhythmic
    # rows form a leading block (at least one, so a 1-row library still
    # peaks at alpha_hz); downstream assembly shuffles row order anyway.
    n_rhythmic = max(1, int(round(rhythm_fraction * n_sources)))
    rhythmic = np.arange(n_sources) < n_rhythmic
    t = np.where(
        rhythmic,
        rng.uniform(0.6, 0.95, size=n_sources),
        rng.uniform(0.002, 0.05, size=n_sources),
    )
    v = np.minimum(rng.uniform(0.7, 1.3, size=n_sources) * shared_level, t)
    cycle = max(fs / alpha_hz, 2.0)
    max_lag = max(int(round(0.4 * cycle)), 1)
    lags = rng.integers(-max_lag, max_lag + 1, size=n_sources)
    q_private = np.exp(rng.uniform(np.log(6.0), np.log(20.0), size=n_sources))
    f_private = alpha_hz * rng.uniform(0.85, 1.22, size=n_sources)

    data = np.empty((n_sources, n_samples))
    for k in range(n_sources):
        row = np.sqrt(1.0 - t[k]) * _spectral_noise(rng, background_amp, n_samples)
        row += np.sqrt(t[k] - v[k]) * _spectral_noise(
            rng, _resonator_amplitude(freqs, f_private[k], q_private[k]), n_samples
        )
        row += np.sqrt(v[k]) * np.roll(shared, int(lags[k]))
        data[k] = row
    return SourceLibrary(data=data, fs=fs, origin=f"synthetic(seed={seed})")


def assemble_source_activity(
    library: SourceLibrary,
    n_total: int,
    n_active: int,
    noise_sigma: float,
    n_samples: int,
    seed: int = 0,
) -> SourceActivity:
    """Mix active library rows with Gaussian fill and shuffle row order.

    Exactly ``n_active`` distinct library rows are selected, truncated to
    ``n_samples`` and normalized to unit sample variance; the remaining
    ``n_total - n_active`` rows are i.i.d. zero-mean Gaussian with standard
    deviation ``noise_sigma``. Row order is a seed-determined permutation.
    """
    if n_total < 1:
        raise ValueError("n_total must be >= 1")
    if not 0 <= n_active <= n_total:
        raise ValueError("need 0 <= n_active <= n_total")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be >= 0")
    if n_active > library.n_library:
        raise InsufficientLibrary(
            f"requested {n_active} active sources from a {library.n_library}-row library"
        )
    if n_samples > library.n_samples:
        raise InsufficientSamples(
            f"requested {n_samples} samples; library rows hold {library.n_samples}"
        )
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")

    rng = np.random.default_rng(seed)
    chosen = rng.choice(library.n_library, size=n_active, replace=False)
    order = rng.permutation(n_total)

    data = np.empty((n_total, n_samples))
    active = library.data[chosen, :n_samples].copy()
    sd = active.std(axis=1, keepdims=True)
    if np.any(sd == 0):
        raise ValueError("selected library rows include a constant row")
    active /= sd
    data[order[:n_active]] = active

    noise_rows = order[n_active:]
    for start in range(0, noise_rows.size, _NOISE_CHUNK):
        rows = noise_rows[start : start + _NOISE_CHUNK]
        data[rows] = noise_sigma * rng.standard_normal((rows.size, n_samples))

    return SourceActivity(data=data, fs=library.fs, n_active=n_active)


def generate_synthetic_leadfield(
    montage: str | int | Montage,
    n_sources: int,
    seed: int = 0,
) -> LeadField:
    """Distance-based stand-in for a boundary-element gain matrix.

    Sources are placed at random inside the unit sphere, on a cortex-like
    shell (radius 0.75 to 0.95 of the head radius); the gain from source s
    to electrode e is 1 / (eps + |e - s|^2) with eps = 0.1, and every
    channel row is scaled to unit maximum. Dense, strictly positive, and
    spatially smooth: nearby electrodes get correlated gain rows, the
    volume-conduction surrogate.
    """
    if n_sources < 1:
        raise EmptyRequest("n_sources must be >= 1")
    m = get_montage(montage)
    rng = np.random.default_rng(seed)

    direction = rng.standard_normal((n_sources, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    radius = rng.uniform(0.75, 0.95, n_sources)
    points = direction * radius[:, None]

    diff = m.positions[:, None, :] - points[None, :, :]
    gain = 1.0 / (_GAIN_EPS + np.sum(diff * diff, axis=2))
    gain /= gain.max(axis=1, keepdims=True)
    return LeadField(gain=gain, montage=m.label, channel_names=m.names)


def project_to_scalp(lf: LeadField, src: SourceActivity) -> MultichannelRecord:
    """Forward solution: scalp record = gain @ source activity."""
    if lf.n_sources != src.n_sources:
        raise ShapeMismatch(
            f"lead field has {lf.n_sources} sources, activity has {src.n_sources}"
        )
    return MultichannelRecord(
        data=lf.gain @ src.data,
        fs=src.fs,
        channel_names=lf.channel_names,
    )
