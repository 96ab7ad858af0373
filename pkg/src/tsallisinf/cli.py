"""Command-line simulator.

Subcommands:
  run           simulate a config, write raw + aggregate CSVs
  oracle-check  randomized solver/estimator self-checks, exit 0 on pass
  bounds        write the reference bound curves for a config

The TSALLIS_THREADS environment variable overrides --threads.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .harness import (
    ConfigError,
    aggregate,
    load_config,
    run_batch,
    write_aggregate_csv,
    write_bounds_csv,
    write_raw_csv,
)
from .oracles import run_all_suites


def _add_common(parser: argparse.ArgumentParser, with_threads: bool) -> None:
    parser.add_argument("--config", required=True, help="experiment config (JSON)")
    parser.add_argument("--seed", type=int, default=None, help="override the base seed")
    parser.add_argument("--out", default=None, help="output directory")
    if with_threads:
        parser.add_argument(
            "--threads", type=int, default=1,
            help="worker processes (TSALLIS_THREADS overrides)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsallis-inf", description="Multi-armed bandit simulator"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("run", help="simulate a config"), with_threads=True)
    oracle = sub.add_parser("oracle-check", help="randomized self-checks")
    oracle.add_argument("--seed", type=int, default=0)
    _add_common(sub.add_parser("bounds", help="reference bound curves"), with_threads=False)
    return parser


def _resolve_threads(flag_value: int) -> int:
    env_value = os.environ.get("TSALLIS_THREADS")
    if env_value is not None:
        try:
            threads = int(env_value)
        except ValueError:
            raise ConfigError(f"TSALLIS_THREADS must be an integer, got {env_value!r}")
    else:
        threads = flag_value
    if threads < 1:
        raise ConfigError("thread count must be >= 1")
    return threads


def _load(args) -> tuple:
    config = load_config(args.config)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed must be >= 0")
        config = type(config)(
            config.env, config.algorithms, config.horizon,
            config.repetitions, args.seed, config.out_dir,
        )
    out_dir = args.out or config.out_dir
    if out_dir is None:
        out_dir = os.path.join("results", config.env_label)
    return config, Path(out_dir)


def _cmd_run(args) -> int:
    config, out_dir = _load(args)
    threads = _resolve_threads(args.threads)
    result = run_batch(config, threads=threads)
    rows = aggregate(result.traces)
    write_raw_csv(out_dir / "raw.csv", result.traces)
    write_aggregate_csv(out_dir / "aggregate.csv", rows)
    for failure in result.failures:
        print(
            f"run failed: algorithm={failure.algorithm} seed={failure.seed}: "
            f"{failure.message}",
            file=sys.stderr,
        )
    finals = [r for r in rows if r.t == config.horizon]
    for row in finals:
        print(
            f"{row.algorithm} on {row.env}: mean pseudo-regret "
            f"{row.mean:.2f} +/- {row.std:.2f} over {row.n_runs} runs at t={row.t}"
        )
    print(f"wrote {out_dir / 'raw.csv'} and {out_dir / 'aggregate.csv'}")
    return 0 if result.traces else 1


def _cmd_oracle_check(args) -> int:
    results = run_all_suites(seed=args.seed)
    for res in results:
        print(res.line())
    return 0 if all(r.ok for r in results) else 1


def _cmd_bounds(args) -> int:
    config, out_dir = _load(args)
    path = out_dir / "bounds.csv"
    write_bounds_csv(path, config)
    print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "oracle-check":
            return _cmd_oracle_check(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
