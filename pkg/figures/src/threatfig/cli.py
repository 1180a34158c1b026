"""Figure script entry point.

threatdyn-figures --kind heatmap   --csv sweep.csv --out corr
threatdyn-figures --kind scatter   --csv sweep.csv --out quad \\
    --x anti_immigrant_sentiment --y social_conservatism \\
    --subset nationalism_level:lowest_quartile
threatdyn-figures --kind histogram --csv sweep.csv --out hists/ \\
    --columns anthropomorphic_promiscuity,engagement_1

Exit codes: 0 success, 1 bad input (schema, selectors, empty subset), 2 I/O.
"""

from __future__ import annotations

import argparse
import sys

from .csvdata import SUBSET_RULES, CsvFormatError
from .render import fig_corr_heatmap, fig_histograms, fig_scatter_quadrant


def build_parser():
    parser = argparse.ArgumentParser(prog="threatdyn-figures",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--kind", required=True,
                        choices=("heatmap", "scatter", "histogram"))
    parser.add_argument("--csv", required=True, help="sweep CSV path")
    parser.add_argument("--out", required=True,
                        help="output image path (or base path / directory)")
    parser.add_argument("--x", help="x column (scatter)")
    parser.add_argument("--y", help="y column (scatter)")
    parser.add_argument("--subset", metavar="COLUMN:RULE",
                        help="subset rows before plotting (scatter); rules: "
                             + ", ".join(SUBSET_RULES))
    parser.add_argument("--columns", help="comma-separated columns (histogram)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "heatmap":
            paths, _ = fig_corr_heatmap(args.csv, args.out)
        elif args.kind == "scatter":
            if not args.x or not args.y:
                raise ValueError("scatter needs --x and --y")
            subset = None
            if args.subset:
                if ":" not in args.subset:
                    raise ValueError("--subset must be COLUMN:RULE")
                column, rule = args.subset.split(":", 1)
                subset = (column, rule)
            paths, n = fig_scatter_quadrant(args.csv, args.x, args.y, subset,
                                            args.out)
            print(f"plotted {n} points", file=sys.stderr)
        else:
            if not args.columns:
                raise ValueError("histogram needs --columns")
            columns = [c.strip() for c in args.columns.split(",") if c.strip()]
            written = fig_histograms(args.csv, columns, args.out)
            paths = [p for ps in written.values() for p in ps]
        for p in paths:
            print(p)
        return 0
    except (CsvFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
