"""Acceptance suite: every criterion printed as one PASS/FAIL line.

Criteria 1-5 share a single default desk-scale run (montages 19 and 64,
all five metrics, alpha band, 100 seeded trials). Criteria 6-10 are
oracle, invariant, determinism, and round-trip gates.
"""

import json
import os
import time

import numpy as np
import pytest

from conftest import make_record, quiet_cross_spectrum
from oracles import (
    mc_permutation_pvalue,
    naive_cross_spectrum,
    naive_entropy,
    naive_kurtosis,
    naive_mean,
    naive_skewness,
)

from fcdist import matrix_io, weight_stats
from fcdist.cli import main as cli_main
from fcdist.connectivity import (
    METRICS,
    aec_matrix,
    coherence_matrix,
    icoh_matrix,
    pli_matrix,
    plv_matrix,
)
from fcdist.correlation import pearson_correlation
from fcdist.forward import generate_synthetic_sources
from fcdist.pipeline import desk_scale_config, run_normative_analysis, run_simulation_experiment
from fcdist.spectral import ALPHA, DEFAULT_BANDS, band_slice, bandpass_analytic, coherency

VC_METRICS = ("COH", "PLV", "AEC")  # volume-conduction-sensitive
LAG_METRICS = ("iCOH", "PLI")

_JOBS = max(os.cpu_count() or 1, 1)


def report(criterion: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {status}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    return ok


@pytest.fixture(scope="module")
def grid():
    cfg = desk_scale_config(montages=(19, 64), trials=100, master_seed=0)
    t0 = time.time()
    result = run_simulation_experiment(cfg, jobs=_JOBS)
    elapsed = time.time() - t0
    cells = {}
    for row in result.trial_rows:
        cells.setdefault((row.montage, row.metric), []).append(row)
    return {"result": result, "cells": cells, "elapsed": elapsed, "cfg": cfg}


def test_criterion_01_right_skewness(grid):
    details = []
    ok = grid["elapsed"] < 600.0
    details.append(f"runtime {grid['elapsed']:.0f}s")
    for (montage, metric), rows in sorted(grid["cells"].items()):
        frac = np.mean([r.skewness is not None and r.skewness > 0 for r in rows])
        details.append(f"{montage}/{metric}={frac:.2f}")
        ok &= frac >= 0.95
    assert report("1 right-skewness", ok, " ".join(details))


def test_criterion_02_platykurtosis(grid):
    details = []
    ok = True
    for (montage, metric), rows in sorted(grid["cells"].items()):
        frac = np.mean([r.kurtosis is not None and r.kurtosis < 3 for r in rows])
        details.append(f"{montage}/{metric}={frac:.2f}")
        ok &= frac >= 0.95
    assert report("2 platykurtosis", ok, " ".join(details))


def test_criterion_03_entropy_dichotomy(grid):
    details = []
    ok = True
    for montage in (19, 64):
        med = {m: float(np.median([r.entropy for r in grid["cells"][(montage, m)]]))
               for m in METRICS}
        for m in VC_METRICS:
            ok &= med[m] >= med["iCOH"] + 0.1
            ok &= med[m] >= med["PLI"] + 0.1
            ok &= med[m] >= 0.6
        details.append(
            f"m{montage}: " + " ".join(f"{m}={med[m]:.2f}" for m in METRICS)
        )
    assert report("3 entropy-dichotomy", ok, "; ".join(details))


def _corr_lookup(grid):
    table = {}
    for row in grid["result"].correlation_rows:
        table[(row.montage, row.metric, row.pair)] = row
    return table


def test_criterion_04_mcw_entropy_coupling(grid):
    corr = _corr_lookup(grid)
    details = []
    ok = True
    for montage in (19, 64):
        for metric in METRICS:
            row = corr[(montage, metric, "mcw_entropy")]
            cell_ok = row.r > 0 and row.p < 0.001
            details.append(f"{montage}/{metric}: r={row.r:+.2f} p={row.p:.1e}")
            ok &= cell_ok
    assert report("4 mcw-entropy coupling", ok, " ".join(details))


def test_criterion_05_mcw_shape_coupling_vc_metrics(grid):
    corr = _corr_lookup(grid)
    details = []
    ok = True
    for montage in (19, 64):
        for metric in VC_METRICS:
            for pair in ("mcw_skewness", "mcw_kurtosis"):
                row = corr[(montage, metric, pair)]
                cell_ok = row.r < 0 and row.p < 0.001
                details.append(
                    f"{montage}/{metric}/{pair.split('_')[1]}: r={row.r:+.2f} p={row.p:.1e}"
                )
                ok &= cell_ok
    assert report("5 mcw-shape coupling", ok, " ".join(details))


def test_criterion_06_metric_identities(rng):
    lib = generate_synthetic_sources(1, 10000, 200.0, 10.0, seed=42)
    x = lib.data[0] + 0.1 * rng.standard_normal(10000)
    rec = make_record(np.vstack([x, x]), fs=200.0)
    c = coherency(quiet_cross_spectrum(rec, 512))
    a = bandpass_analytic(rec, ALPHA)
    vals = {
        "COH": coherence_matrix(c, ALPHA).weights[0, 1],
        "PLV": plv_matrix(a).weights[0, 1],
        "AEC": aec_matrix(a).weights[0, 1],
        "iCOH": icoh_matrix(c, ALPHA).weights[0, 1],
        "PLI": pli_matrix(a).weights[0, 1],
    }
    ok = all(abs(vals[m] - 1.0) < 1e-9 for m in ("COH", "PLV", "AEC"))
    ok &= all(abs(vals[m]) < 1e-9 for m in ("iCOH", "PLI"))
    assert report(
        "6 metric identities", ok,
        " ".join(f"{m}={v:.2e}" if m in LAG_METRICS else f"{m}={v:.10f}"
                 for m, v in vals.items()),
    )


def test_criterion_07_oracle_equivalence():
    rng = np.random.default_rng(1234)
    ok = True

    # distribution statistics vs direct-evaluation oracles, 1000 vectors
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(4, 200))
        w = rng.random(n)
        worst = max(
            worst,
            abs(float(np.mean(w)) - naive_mean(w)),
            abs(weight_stats.skewness(w) - naive_skewness(w)),
            abs(weight_stats.kurtosis(w) - naive_kurtosis(w)),
            abs(weight_stats.shannon_entropy(w) - naive_entropy(w)),
        )
    ok &= worst < 1e-10

    # exact-t p versus a Monte Carlo permutation oracle at n = 20
    perm_rng = np.random.default_rng(3000)
    worst_p = 0.0
    for case in range(100):
        x = perm_rng.standard_normal(20)
        y = perm_rng.standard_normal(20) + 0.25 * x * (case % 4)
        res = pearson_correlation(x, y)
        p_mc = mc_permutation_pvalue(x, y, n_draws=60_000, seed=77_000 + case)
        worst_p = max(worst_p, abs(res.p - p_mc))
    ok &= worst_p < 0.01

    # Bartlett estimator versus the naive DFT-and-average oracle
    data = rng.standard_normal((3, 32 * 4))
    cs = quiet_cross_spectrum(make_record(data, fs=32.0), 32)
    _, mats = naive_cross_spectrum(data, 32.0, 32)
    bart_err = float(np.max(np.abs(cs.mats - mats)))
    ok &= bart_err < 1e-10

    assert report(
        "7 oracle equivalence", ok,
        f"stats<= {worst:.1e}, pearson p<= {worst_p:.3f}, bartlett<= {bart_err:.1e}",
    )


def test_criterion_08_invariant_suites():
    rng = np.random.default_rng(555)
    violations = 0
    cases = 0

    # cross-spectral invariants on random records
    for _ in range(40):
        n_ch = int(rng.integers(2, 6))
        rec = make_record(rng.standard_normal((n_ch, 64 * 4)), fs=64.0)
        cs = quiet_cross_spectrum(rec, 64)
        c = coherency(cs)
        cases += 3
        if np.max(np.abs(cs.mats - cs.mats.conj().transpose(0, 2, 1))) > 1e-10:
            violations += 1
        if np.any(np.einsum("fii->fi", cs.mats).real < 0):
            violations += 1
        if np.max(np.abs(c.mats)) > 1.0 + 1e-9:
            violations += 1

    # metric-matrix invariants
    for _ in range(40):
        rec = make_record(rng.standard_normal((3, 512 * 3)), fs=200.0)
        c = coherency(quiet_cross_spectrum(rec, 512))
        a = bandpass_analytic(rec, ALPHA)
        for cm in (coherence_matrix(c, ALPHA), icoh_matrix(c, ALPHA),
                   plv_matrix(a), pli_matrix(a), aec_matrix(a)):
            cases += 2
            if np.any(cm.weights < 0) or np.any(cm.weights > 1):
                violations += 1
            if not np.array_equal(cm.weights, cm.weights.T):
                violations += 1

    # weight-vector invariants
    for _ in range(500):
        n = int(rng.integers(4, 150))
        w = rng.random(n)
        se = weight_stats.shannon_entropy(w)
        k = weight_stats.kurtosis(w)
        s = weight_stats.skewness(w)
        cases += 2
        if not 0.0 <= se <= 1.0:
            violations += 1
        if k < s * s + 1 - 1e-9:
            violations += 1

    ok = violations == 0 and cases >= 1000
    assert report("8 invariant suites", ok, f"{cases} cases, {violations} violations")


def test_criterion_09_determinism_across_jobs(tmp_path):
    cfg = {
        "montages": [19], "metrics": ["COH", "PLV", "PLI"], "bands": ["alpha"],
        "trials": 6, "n_samples": 4000, "n_sources": 300, "n_active": 40,
        "master_seed": 11,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    for jobs, sub in (("1", "j1"), ("8", "j8")):
        code = cli_main([
            "simulate", "--config", str(cfg_path), "--jobs", jobs,
            "--out", str(tmp_path / sub),
        ])
        assert code == 0
    same = all(
        (tmp_path / "j1" / name).read_bytes() == (tmp_path / "j8" / name).read_bytes()
        for name in ("trials.csv", "correlations.csv")
    )
    assert report("9 determinism", same, "jobs 1 vs 8 byte-identical")


def test_criterion_10_normative_round_trip(tmp_path, rng):
    data = rng.standard_normal((4, 512 * 4))
    rec = make_record(data, fs=200.0)
    cs = quiet_cross_spectrum(rec, 512)
    c = coherency(cs)
    expected = {}
    for metric, cm in (("COH", coherence_matrix(c, ALPHA)), ("iCOH", icoh_matrix(c, ALPHA))):
        expected[metric] = weight_stats.summarize(
            weight_stats.upper_triangle_weights(cm.weights), 100
        )
    path = matrix_io.write_cross_spectrum(tmp_path / "s.csv", cs, list(rec.channel_names))
    res = run_normative_analysis([path], bands=(ALPHA,))
    worst = 0.0
    for row in res.trial_rows:
        exp = expected[row.metric]
        worst = max(worst, abs(row.mcw - exp.mcw), abs(row.entropy - exp.entropy),
                    abs(row.skewness - exp.skewness), abs(row.kurtosis - exp.kurtosis))
    ok = worst < 1e-12

    # normative grid: 512-sample segments at fs 200 span 1.17..19.14 Hz
    freqs = cs.freqs
    covered = np.unique(np.concatenate([band_slice(freqs, b) for b in DEFAULT_BANDS]))
    grid_ok = (
        abs(freqs[covered[0]] - 1.17) < 0.005
        and abs(freqs[covered[-1]] - 19.14) < 0.005
        and abs((freqs[1] - freqs[0]) - 0.39) < 0.001
    )
    ok &= grid_ok
    assert report("10 normative round-trip", ok,
                  f"max summary delta {worst:.1e}, grid {'ok' if grid_ok else 'bad'}")
