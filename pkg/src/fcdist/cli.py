"""Command-line interface.

Subcommands: ``simulate`` (seeded experiment grid), ``normative``
(stored cross-spectra), ``gen-sources`` / ``gen-leadfield`` (emit matrix
files), ``summarize`` (distribution statistics of a stored connectivity
matrix). Exit codes: 0 success, 1 usage error, 2 data error,
3 experiment failed.
"""

from __future__ import annotations

import argparse
import glob
import json
import sys
from pathlib import Path

from . import forward, matrix_io, pipeline, weight_stats
from .errors import ExperimentFailed, FcdistError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_EXPERIMENT = 3


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    data errors, so remap usage problems to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="fcdist", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[], help="run the seeded simulation grid")
    p.add_argument("--config", type=Path, help="JSON config file (ExperimentConfig fields)")
    p.add_argument("--out", type=Path, default=Path("results"), help="output directory")
    p.add_argument("--seed", type=int, help="override master_seed")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--trials", type=int, help="override trial count")
    p.add_argument("--montages", help="comma list, e.g. 19,64")
    p.add_argument("--metrics", help="comma list, e.g. COH,PLV")
    p.add_argument("--bands", help="comma list of names or name=lo-hi")

    p = sub.add_parser("normative", help="analyze stored cross-spectrum files")
    p.add_argument("--input", required=True, help="glob of cross-spectrum CSV files")
    p.add_argument("--bands", default="delta,theta,alpha,beta",
                   help="comma list of names or name=lo-hi")
    p.add_argument("--out", type=Path, default=Path("results"))
    p.add_argument("--bins", type=int, default=100)

    p = sub.add_parser("gen-sources", help="generate a synthetic source library")
    p.add_argument("--n", type=int, default=200, help="number of source rows")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--fs", type=float, default=200.0)
    p.add_argument("--alpha-hz", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True, help="output CSV path")

    p = sub.add_parser("gen-leadfield", help="generate a synthetic lead field")
    p.add_argument("--montage", default="std19",
                   help="std19 | egi32 | egi64 | egi128 or channel count")
    p.add_argument("--n-sources", type=int, default=3002)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True, help="output CSV path")

    p = sub.add_parser("summarize",
                       help="distribution statistics of a stored connectivity matrix")
    p.add_argument("--input", type=Path, required=True, help="matrix CSV path")
    p.add_argument("--bins", type=int, default=100)
    return parser


def _parse_bands(spec: str):
    return tuple(pipeline.band_from_spec(tok) for tok in spec.split(",") if tok.strip())


def _cmd_simulate(args) -> int:
    raw = {}
    if args.config is not None:
        with open(args.config) as f:
            raw = json.load(f)
    cfg = pipeline.config_from_dict(raw)
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.montages:
        overrides["montages"] = tuple(int(tok) for tok in args.montages.split(","))
    if args.metrics:
        overrides["metrics"] = tuple(tok.strip() for tok in args.metrics.split(","))
    if args.bands:
        overrides["bands"] = _parse_bands(args.bands)
    if overrides:
        from dataclasses import replace
        cfg = replace(cfg, **overrides)
    result = pipeline.run_simulation_experiment(cfg, jobs=max(args.jobs, 1))
    written = pipeline.write_results(result, args.out)
    print(f"wrote {len(written)} files to {args.out}")
    return EXIT_OK


def _cmd_normative(args) -> int:
    paths = sorted(glob.glob(args.input))
    if not paths:
        print(f"no files match {args.input!r}", file=sys.stderr)
        return EXIT_DATA
    result = pipeline.run_normative_analysis(paths, _parse_bands(args.bands), args.bins)
    written = pipeline.write_results(result, args.out)
    print(f"analyzed {result.config['subjects_used']} subject(s); "
          f"wrote {len(written)} files to {args.out}")
    return EXIT_OK


def _cmd_gen_sources(args) -> int:
    lib = forward.generate_synthetic_sources(
        args.n, args.samples, args.fs, args.alpha_hz, args.seed
    )
    matrix_io.write_source_library(args.out, lib)
    print(f"wrote {lib.n_library} x {lib.n_samples} source library to {args.out}")
    return EXIT_OK


def _cmd_gen_leadfield(args) -> int:
    montage = int(args.montage) if args.montage.isdigit() else args.montage
    lf = forward.generate_synthetic_leadfield(montage, args.n_sources, args.seed)
    matrix_io.write_leadfield(args.out, lf)
    print(f"wrote {lf.n_channels} x {lf.n_sources} lead field to {args.out}")
    return EXIT_OK


def _cmd_summarize(args) -> int:
    data, _meta = matrix_io.read_matrix(args.input)
    summary = weight_stats.summarize(
        weight_stats.upper_triangle_weights(data), args.bins
    )
    print(json.dumps({
        "mcw": summary.mcw,
        "skewness": summary.skewness,
        "kurtosis": summary.kurtosis,
        "entropy": summary.entropy,
        "n_pairs": summary.n_pairs,
    }, indent=2))
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "normative": _cmd_normative,
    "gen-sources": _cmd_gen_sources,
    "gen-leadfield": _cmd_gen_leadfield,
    "summarize": _cmd_summarize,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ExperimentFailed as err:
        print(f"experiment failed: {err}", file=sys.stderr)
        return EXIT_EXPERIMENT
    except (FcdistError, OSError, ValueError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
