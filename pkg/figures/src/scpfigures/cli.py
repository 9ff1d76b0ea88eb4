"""Command line entry: scpfigures CSV --kind KIND --out PATH."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, FigureSpec, ScpFiguresError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scpfigures",
        description="Render benchmark harness CSVs into standard figures",
    )
    parser.add_argument("csv", help="input CSV path")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--out", required=True,
                        help="output image path; vector formats (.pdf, .svg) "
                             "are recommended")
    parser.add_argument("--baseline", default="HUBO_SA",
                        help="normalization baseline for cost_bars")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        csv_path=args.csv, kind=args.kind, out_path=args.out,
        baseline=args.baseline,
    )
    try:
        render(spec)
    except ScpFiguresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
