"""Command line front end for figure rendering.

Usage: jt-plot contour <csv> <out-image> and jt-plot fidelity <csv>
<out-image>.  Exit codes: 0 figure written, 2 bad usage (missing file,
missing column, empty table).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FigureJob, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jt-plot",
        description="Render figures from the experiment CSV artifacts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("contour", help="two contour panels plus the diagonal cut")
    p.add_argument("csv", type=Path, help="table produced by the contour run")
    p.add_argument("out", type=Path, help="output image path")
    p.set_defaults(kind="contour-triptych")

    p = sub.add_parser("fidelity", help="state-error curves against time")
    p.add_argument("csv", type=Path, help="table produced by the fidelity run")
    p.add_argument("out", type=Path, help="output image path")
    p.set_defaults(kind="fidelity-lines")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = FigureJob(csv_path=args.csv, kind=args.kind, out_path=args.out)
    try:
        out = render(job)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
