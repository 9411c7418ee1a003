"""Command-line driver: render fig1..fig5 SVGs from sweep CSV files."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import FigureError
from .render import FIGURE_IDS, default_specs, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdot2e-figures",
        description="Render static figures from qdot2e CSV outputs",
    )
    parser.add_argument(
        "--data-dir", required=True,
        help="directory holding spectrum.csv, entanglement.csv, asymptotic.csv",
    )
    parser.add_argument("--out-dir", required=True, help="directory for SVG outputs")
    parser.add_argument(
        "--figures", nargs="*", choices=list(FIGURE_IDS), default=list(FIGURE_IDS),
        help="subset of figures to render (default: all five)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    os.makedirs(args.out_dir, exist_ok=True)
    specs = [
        s for s in default_specs(args.data_dir, args.out_dir)
        if s.figure_id in args.figures
    ]
    try:
        for spec in specs:
            report = render(spec)
            print(
                f"{report.figure_id}: {len(report.series_labels)} curves, "
                f"{report.asymptote_count} asymptotes -> {report.output}"
            )
    except (FigureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
