"""Command-line interface.

Exit codes: 0 success, 2 parse/usage error, 3 empty solution set (a valid
outcome), 4 internal failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InputError, InternalError, LatkError, ParseError
from .inputfile import parse_input
from .pipeline import DEFAULT_GOALS, Report, RunConfig, run
from .report import format_report, write_report

_GOAL_FLAGS = (
    ("hilbert-basis", "compute the Hilbert basis / module generators"),
    ("hilbert-series", "compute the Hilbert series"),
    ("hsop", "compute the hsop denominator (implies --hilbert-series)"),
    ("class-group", "compute the divisor class group"),
    ("module-generators", "minimal module generators of the integral closure"),
    ("triangulation", "report the triangulation"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latk", description="lattice points in rational polyhedra")
    parser.add_argument("input", help="input file path ('-' for stdin)")
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    for name, help_text in _GOAL_FLAGS:
        parser.add_argument(f"--{name}", action="store_true", help=help_text)
    parser.add_argument("-b", "--bottom", action="store_true", help="force bottom decomposition")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for simplex evaluation")
    parser.add_argument("--verbose", action="store_true", help="print progress data to stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    goals = frozenset(name for name, _ in _GOAL_FLAGS if getattr(args, name.replace("-", "_")))
    if not goals:
        goals = DEFAULT_GOALS
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"latk: cannot read input: {exc}", file=sys.stderr)
        return 2
    try:
        system = parse_input(text)
        config = RunConfig(
            goals=goals,
            bottom=args.bottom,
            verbose=args.verbose,
            threads=args.threads,
            input_path=args.input,
            output_path=args.out,
        )
        report = run(system, config)
    except ParseError as exc:
        print(f"latk: parse error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"latk: input error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:  # pragma: no cover - should be unreachable
        print(f"latk: internal arithmetic failure: {exc}", file=sys.stderr)
        return 4
    except LatkError as exc:
        print(f"latk: error: {exc}", file=sys.stderr)
        return 2
    text_out = format_report(report)
    if args.out:
        write_report(report, args.out)
        if args.verbose:
            print(f"report written to {args.out}")
    else:
        sys.stdout.write(text_out)
    return 3 if report.empty else 0


if __name__ == "__main__":
    sys.exit(main())
