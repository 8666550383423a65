"""plot <figure-id> --in DIR --out FILE

Figure ids: 1 (quantum vs classical overlay), 6/7 (lambda-sweep panels),
8 (mesh heatmap), 9 (efficiency curve with quadratic fit).
"""

import argparse
import sys
from pathlib import Path

from .recipes import FIGURE_IDS, RecipeError, build_recipe
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render figures from ctqw CSV/JSON outputs."
    )
    parser.add_argument("figure_id", type=int, choices=FIGURE_IDS, metavar="figure-id",
                        help=f"one of {FIGURE_IDS}")
    parser.add_argument("--in", dest="indir", required=True, help="directory with input CSVs")
    parser.add_argument("--out", dest="output", required=True, help="output image file")
    parser.add_argument("--no-overlay", action="store_true",
                        help="skip the dashed reference curve")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        recipe = build_recipe(args.figure_id, Path(args.indir), Path(args.output),
                              overlay=not args.no_overlay)
        out = render(recipe)
    except RecipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


def entry():
    sys.exit(main())
