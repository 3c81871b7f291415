"""Command-line interface.

Subcommands:
    run      --config FILE [--mode markov|postmarkov|oracle] [--out PATH] [--threads N]
    validate --config FILE
    selftest

Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, SweepRun, describe, load_config
from .errors import SpinBathError
from .experiments import run_sweep, run_timeseries
from .selftest import run_selftest


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinbath",
        description="Dynamics and steady-state entanglement of two coupled spins "
        "between thermal baths",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment and write its CSV")
    p_run.add_argument("--config", required=True, help="INI config file")
    p_run.add_argument("--mode", choices=("markov", "postmarkov", "oracle"),
                       help="override the [run] mode")
    p_run.add_argument("--out", help="override the [output] path")
    p_run.add_argument("--threads", type=int, help="worker count for grid evaluation")

    p_val = sub.add_parser("validate", help="parse a config and echo derived quantities")
    p_val.add_argument("--config", required=True)

    sub.add_parser("selftest", help="run the fast invariant suite")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "selftest":
        failures = run_selftest()
        if failures:
            print(f"selftest: {failures} check(s) failed", file=sys.stderr)
            return 2
        print("selftest: all checks passed")
        return 0

    try:
        if args.command == "validate":
            cfg = load_config(args.config)
            print(describe(cfg))
            return 0
        cfg = load_config(args.config, mode=args.mode, out=args.out, threads=args.threads)
        path = run_sweep(cfg) if isinstance(cfg.run, SweepRun) else run_timeseries(cfg)
        print(f"wrote {path}")
        return 0
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 1
    except SpinBathError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
