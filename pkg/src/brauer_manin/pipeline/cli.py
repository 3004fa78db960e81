"""Command line entry point: ``brauer-manin <command> --problem FILE [flags]``."""
from __future__ import annotations

import argparse
import sys

from ..exact.places import parse_place_q
from ..local.search import INCONCLUSIVE
from .problem import ProblemError, load_problem
from .report import emit_report
from .run import COMMANDS, run_pipeline

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 2, 3


def _places(text: str):
    try:
        return tuple(parse_place_q(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="brauer-manin", description="Descent obstructions and local invariant sweeps.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--problem", required=True, help="problem file (JSON with a versioned header)")
    ap.add_argument("--places", type=_places, help="comma separated places, e.g. 2,3,5,7,inf")
    ap.add_argument("--precision", type=int, help="maximal refinement depth of the local sweeps")
    ap.add_argument("--budget", type=int, help="maximal number of residue classes or boxes per place")
    ap.add_argument("--seed", type=int, help="seed for planted data")
    ap.add_argument("--format", choices=("table", "machine"), default="table")
    ap.add_argument("--oracle-mode", action="store_true", default=None, help="Hilbert symbols by certified search")
    ap.add_argument("--strict", action="store_true", help="exit 3 when the verdict is inconclusive")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    for flag in ("precision", "budget"):
        val = getattr(args, flag)
        if val is not None and val < 1:
            print(f"error: --{flag} must be positive", file=sys.stderr)
            return EXIT_INVALID
    try:
        problem = load_problem(args.problem)
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = run_pipeline(
        problem,
        COMMANDS[args.command],
        places=args.places,
        precision=args.precision,
        budget=args.budget,
        seed=args.seed,
        oracle_mode=args.oracle_mode,
    )
    sys.stdout.write(emit_report(report, args.format))
    if args.strict and report.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
