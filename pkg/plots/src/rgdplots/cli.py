"""Command-line entry point.

Usage:
  plots <kind> --in results.csv --out fig.png
        [--methods a,b] [--fix key=value] [--dump-series series.csv]

Kinds: error-vs-p, error-vs-eps, convergence, releff.
Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, FigureSpec, render
from .results import format_series


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="plots",
                     description="Render figures from benchmark results CSVs")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="input_csv", required=True,
                        help="results CSV (ResultsFile schema)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--methods", default=None,
                        help="comma-separated method filter")
    parser.add_argument("--fix", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="fix a grid column to one value (repeatable)")
    parser.add_argument("--dump-series", default=None,
                        help="also write the plotted aggregates as CSV")
    return parser


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        fix = {}
        for item in args.fix:
            if "=" not in item:
                raise _UsageError(f"--fix expects KEY=VALUE, got {item!r}")
            key, _, value = item.partition("=")
            fix[key] = value
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    try:
        methods = args.methods.split(",") if args.methods else None
        spec = FigureSpec(input_csv=args.input_csv, kind=args.kind,
                          output_path=args.out, methods=methods, fix=fix)
        aggs = render(spec)
        if args.dump_series:
            with open(args.dump_series, "w", encoding="utf-8") as f:
                f.write(format_series(aggs))
        print(f"wrote {args.out}")
        return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
