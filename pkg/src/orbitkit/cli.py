"""Command line entry points: run verification suites, replay stored reports.

Exit codes: 0 when every check passes (or a replay reproduces its report
byte for byte), 1 when a check fails or a replay diverges, 2 on usage or
runtime errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import harness
from .harness import RunConfig


def _int_list(text: str) -> List[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 2 for v in values):
        raise argparse.ArgumentTypeError("block sizes must be integers >= 2")
    return values


def _default_seed() -> int:
    raw = os.environ.get("ORBITKIT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitkit",
        description="verify exact identities and dimension certificates "
                    "for the minimal orbit reduction model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", action="append", default=None,
                        metavar="NAME",
                        help="suite to run (repeatable, comma lists allowed); "
                             f"one of {', '.join(harness.SUITES + ('all',))}")
    verify.add_argument("--n", type=_int_list, default=[2, 3, 4],
                        metavar="N1,N2,...", help="block sizes to verify at")
    verify.add_argument("--samples", type=int, default=25,
                        help="random samples per check (default 25)")
    verify.add_argument("--seed", type=int, default=None,
                        help="master seed (default: ORBITKIT_SEED or 0)")
    verify.add_argument("--tolerance", type=float, default=1e-6,
                        help="relative tolerance for finite-difference checks")
    verify.add_argument("--rank-tolerance", type=float, default=1e-8,
                        help="relative singular value cutoff for float ranks")
    verify.add_argument("--step", type=float, default=1e-5,
                        help="finite difference step")
    verify.add_argument("--backend", choices=("exact", "float", "both"),
                        default="exact",
                        help="rank computation backend; 'both' runs every "
                             "check once per backend on the same samples")
    verify.add_argument("--format", choices=("json", "text"), default="text",
                        help="report format (default text)")
    verify.add_argument("--output", default=None, metavar="PATH",
                        help="write the report to a file instead of stdout")
    verify.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the report")

    replay = sub.add_parser("replay", help="re-run a stored JSON report")
    replay.add_argument("--file", required=True, metavar="PATH",
                        help="report produced by 'orbitkit verify --format json'")
    replay.add_argument("--output", default=None, metavar="PATH",
                        help="write the fresh report JSON to a file")
    return parser


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_verify(args) -> int:
    suites = []
    for entry in (args.suite or ["all"]):
        suites.extend(t.strip() for t in entry.split(",") if t.strip())
    config = RunConfig(
        suites=tuple(suites),
        ns=tuple(args.n),
        samples=args.samples,
        seed=args.seed if args.seed is not None else _default_seed(),
        tolerance=args.tolerance,
        rank_tolerance=args.rank_tolerance,
        step=args.step,
        backend=args.backend,
    )
    report = harness.run(config)
    if args.format == "json":
        _emit(report.to_json(include_timings=args.timings), args.output)
    else:
        _emit(report.to_text(include_timings=args.timings), args.output)
    return 0 if report.passed else 1


def _cmd_replay(args) -> int:
    with open(args.file, "r", encoding="utf-8") as handle:
        stored = json.load(handle)
    fresh, identical = harness.replay(stored)
    if args.output:
        _emit(fresh.to_json(include_timings=False), args.output)
    status = "reproduced byte-identically" if identical else "DIVERGED from the stored report"
    summary = fresh.summary()
    sys.stdout.write(f"replay of {args.file}: {status}; "
                     f"{summary['passed']}/{summary['checks']} checks passed\n")
    return 0 if identical else 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_replay(args)
    except (ValueError, OSError, KeyError) as err:
        sys.stderr.write(f"orbitkit: error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
