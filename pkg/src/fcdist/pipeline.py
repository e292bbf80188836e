"""Experiment orchestration: seeded trial grids, normative mode, result files.

A simulation experiment runs a (montage x metric x band x trial) grid.
Every (montage, trial) cell derives its own seed from a stable 64-bit mix
of (master seed, trial, montage), so results are independent of worker
count, scheduling, and of which other montages are in the grid. Outputs
are byte-deterministic for a fixed config.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Iterable
import warnings

from . import connectivity, forward, matrix_io, spectral, weight_stats
from .connectivity import METRICS, WindowConfig
from .correlation import pearson_correlation
from .errors import EmptyBand, ExperimentFailed, FcdistError, NoData
from .montages import MONTAGE_BY_SIZE
from .spectral import ALPHA, Band

CORRELATION_PAIRS = ("mcw_skewness", "mcw_kurtosis", "mcw_entropy")

_MASK64 = (1 << 64) - 1


def mix64(*parts: int) -> int:
    """Stable 64-bit mix (splitmix64 finalizer chain) of integer parts."""
    acc = 0x9E3779B97F4A7C15
    for p in parts:
        acc = (acc ^ (p & _MASK64)) * 0xBF58476D1CE4E5B9 & _MASK64
        acc ^= acc >> 27
        acc = acc * 0x94D049BB133111EB & _MASK64
        acc ^= acc >> 31
    return acc


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one simulation experiment."""

    montages: tuple[int, ...] = (19, 32, 64, 128)
    metrics: tuple[str, ...] = METRICS
    bands: tuple[Band, ...] = (ALPHA,)
    trials: int = 100
    fs: float = 200.0
    n_samples: int = 10000
    n_sources: int = 3002
    n_active: int = 200
    noise_sigma: float = 0.01
    segment_samples: int = 512
    window: WindowConfig = field(default_factory=WindowConfig)
    n_bins: int = 100
    master_seed: int = 0
    source_mode: str = "synthetic"
    leadfield_mode: str = "synthetic"
    alpha_hz: float = 10.0

    def validate(self) -> None:
        if not self.montages:
            raise ValueError("at least one montage required")
        for m in self.montages:
            if m not in MONTAGE_BY_SIZE and self.leadfield_mode == "synthetic":
                raise ValueError(f"no built-in montage with {m} channels")
        bad = [m for m in self.metrics if m not in METRICS]
        if bad or not self.metrics:
            raise ValueError(f"unknown metrics {bad}; choose from {METRICS}")
        if not self.bands:
            raise ValueError("at least one band required")
        for b in self.bands:
            if b.hi >= self.fs / 2.0:
                raise ValueError(f"band {b.name} exceeds Nyquist ({self.fs / 2.0} Hz)")
        if self.trials < 3:
            raise ValueError("need trials >= 3 for the correlation stage")
        for name in ("n_samples", "n_sources", "n_active", "segment_samples", "n_bins"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.n_active > self.n_sources:
            raise ValueError("n_active cannot exceed n_sources")
        if self.fs <= 0 or self.noise_sigma < 0:
            raise ValueError("fs must be positive and noise_sigma non-negative")


@dataclass(frozen=True)
class TrialRow:
    montage: int
    metric: str
    band: str
    trial: int
    mcw: float
    skewness: float | None
    kurtosis: float | None
    entropy: float


@dataclass(frozen=True)
class CorrelationRow:
    montage: int
    metric: str
    band: str
    pair: str
    r: float
    p: float
    n: int
    stars: str


@dataclass(frozen=True)
class CellFailure:
    montage: int
    metric: str
    band: str
    trial: int
    error: str


@dataclass
class ExperimentResult:
    config: dict
    trial_rows: list[TrialRow]
    correlation_rows: list[CorrelationRow]
    failures: list[CellFailure]


@lru_cache(maxsize=8)
def _file_library(path: str) -> forward.SourceLibrary:
    return matrix_io.read_source_library(path)


@lru_cache(maxsize=8)
def _file_leadfield(path: str) -> forward.LeadField:
    return matrix_io.read_leadfield(path)


def _mode_path(mode: str) -> str | None:
    if mode == "synthetic":
        return None
    if mode.startswith("file:"):
        return mode[len("file:"):]
    raise ValueError(f"mode must be 'synthetic' or 'file:<path>', got {mode!r}")


def _cell_leadfield(cfg: ExperimentConfig, montage: int) -> forward.LeadField:
    path = _mode_path(cfg.leadfield_mode)
    if path is not None:
        return _file_leadfield(path)
    return forward.generate_synthetic_leadfield(
        MONTAGE_BY_SIZE[montage], cfg.n_sources, seed=mix64(cfg.master_seed, montage, 3)
    )


def _cell_library(cfg: ExperimentConfig, montage: int, trial: int) -> forward.SourceLibrary:
    path = _mode_path(cfg.source_mode)
    if path is not None:
        return _file_library(path)
    return forward.generate_synthetic_sources(
        cfg.n_active, cfg.n_samples, cfg.fs, cfg.alpha_hz,
        seed=mix64(cfg.master_seed, trial, montage, 1),
    )


def simulate_cell(cfg: ExperimentConfig, montage: int, trial: int
                  ) -> tuple[list[TrialRow], list[CellFailure]]:
    """Run one (montage, trial) cell: all configured metrics and bands."""
    rows: list[TrialRow] = []
    fails: list[CellFailure] = []

    def fail_all(metrics: Iterable[str], band_name: str, err: Exception) -> None:
        for m in metrics:
            fails.append(CellFailure(montage, m, band_name, trial, f"{type(err).__name__}: {err}"))

    spectral_metrics = [m for m in cfg.metrics if m in ("COH", "iCOH")]
    windowed_metrics = [m for m in cfg.metrics if m in ("PLV", "PLI", "AEC")]

    try:
        lf = _cell_leadfield(cfg, montage)
        lib = _cell_library(cfg, montage, trial)
        src = forward.assemble_source_activity(
            lib, cfg.n_sources, cfg.n_active, cfg.noise_sigma, cfg.n_samples,
            seed=mix64(cfg.master_seed, trial, montage, 2),
        )
        rec = forward.project_to_scalp(lf, src)
    except FcdistError as err:
        for band in cfg.bands:
            fail_all(cfg.metrics, band.name, err)
        return rows, fails

    coh_matrix = None
    if spectral_metrics:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", spectral.FewSegmentsWarning)
                cs = spectral.bartlett_cross_spectrum(rec, cfg.segment_samples)
            coh_matrix = spectral.coherency(cs)
        except FcdistError as err:
            for band in cfg.bands:
                fail_all(spectral_metrics, band.name, err)
            spectral_metrics = []

    plv_window = WindowConfig(cfg.window.window_seconds, 0.0)

    for band in cfg.bands:
        analytic = None
        band_windowed = list(windowed_metrics)
        if band_windowed:
            try:
                analytic = spectral.bandpass_analytic(rec, band)
            except FcdistError as err:
                fail_all(band_windowed, band.name, err)
                band_windowed = []
        for metric in cfg.metrics:
            if metric not in spectral_metrics and metric not in band_windowed:
                continue
            try:
                if metric == "COH":
                    cm = connectivity.coherence_matrix(coh_matrix, band)
                elif metric == "iCOH":
                    cm = connectivity.icoh_matrix(coh_matrix, band)
                elif metric == "PLV":
                    cm = connectivity.plv_matrix(analytic, plv_window)
                elif metric == "PLI":
                    cm = connectivity.pli_matrix(analytic, cfg.window)
                else:
                    cm = connectivity.aec_matrix(analytic, cfg.window)
                summary = weight_stats.summarize(
                    weight_stats.upper_triangle_weights(cm.weights), cfg.n_bins
                )
                rows.append(TrialRow(
                    montage=montage, metric=metric, band=band.name, trial=trial,
                    mcw=summary.mcw, skewness=summary.skewness,
                    kurtosis=summary.kurtosis, entropy=summary.entropy,
                ))
            except FcdistError as err:
                fails.append(CellFailure(
                    montage, metric, band.name, trial, f"{type(err).__name__}: {err}"
                ))
    return rows, fails


def _simulate_cell_star(args: tuple[ExperimentConfig, int, int]):
    return simulate_cell(*args)


def _sort_key(cfg: ExperimentConfig):
    metric_rank = {m: i for i, m in enumerate(METRICS)}
    band_rank = {b.name: i for i, b in enumerate(cfg.bands)}

    def key(row):
        return (row.montage, metric_rank.get(row.metric, 99),
                band_rank.get(row.band, 99), row.trial)

    return key


def correlate_rows(trial_rows: list[TrialRow], cfg: ExperimentConfig
                   ) -> tuple[list[CorrelationRow], list[CellFailure]]:
    """Pearson correlations of MCW against the three shape statistics."""
    metric_rank = {m: i for i, m in enumerate(METRICS)}
    band_rank = {b.name: i for i, b in enumerate(cfg.bands)}
    groups: dict[tuple[int, str, str], list[TrialRow]] = {}
    for row in trial_rows:
        groups.setdefault((row.montage, row.metric, row.band), []).append(row)

    corr_rows: list[CorrelationRow] = []
    failures: list[CellFailure] = []
    for key in sorted(groups, key=lambda k: (k[0], metric_rank.get(k[1], 99),
                                             band_rank.get(k[2], 99))):
        montage, metric, band = key
        rows = groups[key]
        for pair, attr in zip(CORRELATION_PAIRS, ("skewness", "kurtosis", "entropy")):
            points = [(r.mcw, getattr(r, attr)) for r in rows
                      if getattr(r, attr) is not None]
            try:
                res = pearson_correlation([p[0] for p in points], [p[1] for p in points])
            except FcdistError as err:
                failures.append(CellFailure(
                    montage, metric, band, -1, f"{pair}: {type(err).__name__}: {err}"
                ))
                continue
            corr_rows.append(CorrelationRow(
                montage=montage, metric=metric, band=band, pair=pair,
                r=res.r, p=res.p, n=res.n, stars=res.stars,
            ))
    return corr_rows, failures


def run_simulation_experiment(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    """Run the full seeded grid; deterministic for fixed cfg at any jobs."""
    cfg.validate()
    cells = [(cfg, montage, trial)
             for montage in cfg.montages for trial in range(cfg.trials)]

    if jobs <= 1:
        outcomes = [simulate_cell(*c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_simulate_cell_star, cells, chunksize=1))

    trial_rows: list[TrialRow] = []
    failures: list[CellFailure] = []
    for rows, fails in outcomes:
        trial_rows.extend(rows)
        failures.extend(fails)
    trial_rows.sort(key=_sort_key(cfg))

    total_cells = len(cfg.montages) * len(cfg.metrics) * len(cfg.bands) * cfg.trials
    if len(failures) > 0.5 * total_cells:
        raise ExperimentFailed(
            f"{len(failures)} of {total_cells} grid cells failed; "
            f"first: {failures[0].error}"
        )

    corr_rows, corr_fails = correlate_rows(trial_rows, cfg)
    failures.extend(corr_fails)
    return ExperimentResult(
        config=config_to_dict(cfg),
        trial_rows=trial_rows,
        correlation_rows=corr_rows,
        failures=failures,
    )


def run_normative_analysis(
    inputs: list[Path | str],
    bands: tuple[Band, ...] = spectral.DEFAULT_BANDS,
    n_bins: int = 100,
) -> ExperimentResult:
    """Weight-distribution statistics for stored cross-spectra.

    Each input file is one subject and yields one scatter point per
    (metric, band); only the spectral metrics apply since no raw record
    is available. Malformed files are skipped with a logged failure.
    """
    trial_rows: list[TrialRow] = []
    failures: list[CellFailure] = []
    used = 0
    n_channels = None
    for subject, path in enumerate(sorted(str(p) for p in inputs)):
        try:
            cs, labels = matrix_io.read_cross_spectrum(path)
        except FcdistError as err:
            failures.append(CellFailure(0, "-", "-", subject,
                                        f"{Path(path).name}: {err}"))
            continue
        used += 1
        n_channels = cs.n_channels
        coh = spectral.coherency(cs)
        for band in bands:
            for metric in ("COH", "iCOH"):
                try:
                    if metric == "COH":
                        cm = connectivity.coherence_matrix(coh, band)
                    else:
                        cm = connectivity.icoh_matrix(coh, band)
                    summary = weight_stats.summarize(
                        weight_stats.upper_triangle_weights(cm.weights), n_bins
                    )
                    trial_rows.append(TrialRow(
                        montage=cs.n_channels, metric=metric, band=band.name,
                        trial=subject, mcw=summary.mcw, skewness=summary.skewness,
                        kurtosis=summary.kurtosis, entropy=summary.entropy,
                    ))
                except EmptyBand as err:
                    failures.append(CellFailure(
                        cs.n_channels, metric, band.name, subject, str(err)
                    ))
    if used == 0:
        raise NoData("no usable cross-spectrum files")

    cfg = ExperimentConfig(
        montages=(n_channels,), metrics=("COH", "iCOH"), bands=tuple(bands),
        trials=max(used, 3), n_bins=n_bins, leadfield_mode="normative",
        source_mode="normative",
    )
    corr_rows: list[CorrelationRow] = []
    if used >= 3:
        corr_rows, corr_fails = correlate_rows(trial_rows, cfg)
        failures.extend(corr_fails)
    return ExperimentResult(
        config={"mode": "normative", "inputs": len(list(inputs)), "subjects_used": used,
                "bands": [band_to_dict(b) for b in bands], "n_bins": n_bins},
        trial_rows=trial_rows,
        correlation_rows=corr_rows,
        failures=failures,
    )


def band_to_dict(b: Band) -> dict:
    return {"name": b.name, "lo": b.lo, "hi": b.hi}


def config_to_dict(cfg: ExperimentConfig) -> dict:
    d = asdict(cfg)
    d["bands"] = [band_to_dict(b) for b in cfg.bands]
    d["montages"] = list(cfg.montages)
    d["metrics"] = list(cfg.metrics)
    return d


_BUILTIN_BANDS = {b.name: b for b in spectral.DEFAULT_BANDS}


def band_from_spec(item) -> Band:
    """Band from a default-band name, 'name=lo-hi' string, or mapping."""
    if isinstance(item, Band):
        return item
    if isinstance(item, dict):
        return Band(str(item["name"]), float(item["lo"]), float(item["hi"]))
    name = str(item).strip()
    if "=" in name:
        label, _, rng = name.partition("=")
        lo, _, hi = rng.partition("-")
        return Band(label.strip(), float(lo), float(hi))
    if name in _BUILTIN_BANDS:
        return _BUILTIN_BANDS[name]
    raise ValueError(f"unknown band {name!r}; use a default name or 'name=lo-hi'")


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Build a config from a nested mapping mirroring the field names."""
    known = set(ExperimentConfig.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    if "bands" in kwargs:
        kwargs["bands"] = tuple(band_from_spec(b) for b in kwargs["bands"])
    if "montages" in kwargs:
        kwargs["montages"] = tuple(int(m) for m in kwargs["montages"])
    if "metrics" in kwargs:
        kwargs["metrics"] = tuple(str(m) for m in kwargs["metrics"])
    if "window" in kwargs and isinstance(kwargs["window"], dict):
        kwargs["window"] = WindowConfig(**kwargs["window"])
    return ExperimentConfig(**kwargs)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_results(result: ExperimentResult, out_dir: Path | str,
                  formats: tuple[str, ...] = ("csv", "json", "scatter")) -> list[Path]:
    """Emit trials.csv, correlations.csv, summary.json and scatter CSVs."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if "csv" in formats:
        path = out_dir / "trials.csv"
        with open(path, "w", newline="\n") as f:
            f.write("montage,metric,band,trial,mcw,skewness,kurtosis,entropy\n")
            for r in result.trial_rows:
                f.write(",".join([
                    str(r.montage), r.metric, r.band, str(r.trial),
                    _fmt(r.mcw), _fmt(r.skewness), _fmt(r.kurtosis), _fmt(r.entropy),
                ]) + "\n")
        written.append(path)

        path = out_dir / "correlations.csv"
        with open(path, "w", newline="\n") as f:
            f.write("montage,metric,band,pair,r,p,n,stars\n")
            for r in result.correlation_rows:
                f.write(",".join([
                    str(r.montage), r.metric, r.band, r.pair,
                    _fmt(r.r), _fmt(r.p), str(r.n), r.stars,
                ]) + "\n")
        written.append(path)

    if "json" in formats:
        aggregates: dict[str, dict] = {}
        groups: dict[tuple[int, str, str], list[TrialRow]] = {}
        for r in result.trial_rows:
            groups.setdefault((r.montage, r.metric, r.band), []).append(r)
        for (montage, metric, band), rows in sorted(groups.items()):
            vals = {}
            for attr in ("mcw", "skewness", "kurtosis", "entropy"):
                xs = sorted(getattr(r, attr) for r in rows if getattr(r, attr) is not None)
                if xs:
                    mid = len(xs) // 2
                    med = xs[mid] if len(xs) % 2 else 0.5 * (xs[mid - 1] + xs[mid])
                    vals[f"median_{attr}"] = med
                    vals[f"mean_{attr}"] = sum(xs) / len(xs)
                else:
                    vals[f"median_{attr}"] = None
                    vals[f"mean_{attr}"] = None
            vals["n_rows"] = len(rows)
            aggregates[f"{montage}/{metric}/{band}"] = vals
        summary = {
            "config": result.config,
            "n_trial_rows": len(result.trial_rows),
            "n_correlation_rows": len(result.correlation_rows),
            "n_failures": len(result.failures),
            "failures": [
                {"montage": fl.montage, "metric": fl.metric, "band": fl.band,
                 "trial": fl.trial, "error": fl.error}
                for fl in result.failures
            ],
            "aggregates": aggregates,
        }
        path = out_dir / "summary.json"
        with open(path, "w", newline="\n") as f:
            json.dump(summary, f, indent=2)
            f.write("\n")
        written.append(path)

    if "scatter" in formats:
        groups = {}
        for r in result.trial_rows:
            groups.setdefault((r.montage, r.metric, r.band), []).append(r)
        for (montage, metric, band), rows in sorted(groups.items()):
            for attr in ("skewness", "kurtosis", "entropy"):
                path = out_dir / f"scatter_{montage}_{metric}_{band}_{attr}.csv"
                with open(path, "w", newline="\n") as f:
                    f.write(f"mcw,{attr}\n")
                    for r in rows:
                        y = getattr(r, attr)
                        if y is not None:
                            f.write(f"{_fmt(r.mcw)},{_fmt(y)}\n")
                written.append(path)
    return written


def default_config() -> ExperimentConfig:
    return ExperimentConfig()


def desk_scale_config(montages: tuple[int, ...] = (19, 64), trials: int = 100,
                      master_seed: int = 0) -> ExperimentConfig:
    """The default desk-scale grid: alpha band, all metrics."""
    return replace(ExperimentConfig(), montages=montages, trials=trials,
                   master_seed=master_seed)
