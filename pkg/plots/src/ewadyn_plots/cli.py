"""Command-line renderer: one ewadyn CSV (plus optional overlays) -> one PNG.

Exit codes: 0 success, 1 schema mismatch (message carries the offending
line number), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import FIGURE_KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ewadyn-plot",
        description="Render ewadyn CSV outputs as PNG figures.")
    ap.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    ap.add_argument("--input", required=True, help="ewadyn CSV to render")
    ap.add_argument("--output", required=True, help="PNG path to write")
    ap.add_argument("--curves", default=None,
                    help="boundary CSV overlaid as black b1/b2 lines (period-diagram)")
    ap.add_argument("--potential", default=None,
                    help="potential CSV overlaid on a second axis (cobweb)")
    ap.add_argument("--title", default=None)
    ap.add_argument("--xlabel", default=None)
    ap.add_argument("--ylabel", default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        kind=args.kind,
        input_path=args.input,
        output_path=args.output,
        curves_path=args.curves,
        potential_path=args.potential,
        title=args.title,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
    )
    try:
        render(spec)
    except SchemaError as exc:
        print(f"ewadyn-plot: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ewadyn-plot: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
