"""Write the norms-of-phi_alpha curve data and print a gnuplot recipe.

    python scripts/reproduce_figure.py --out norms.csv
"""

import argparse
import sys

from hilbertpoints.cli import RunConfig, cmd_norms

GNUPLOT = """\
set datafile separator ','
set key left top
set xlabel 'alpha'
plot '{out}' using 1:2 skip 2 with lines title 'H^2', \\
     ''      using 1:3 skip 2 with lines title 'W', \\
     ''      using 1:5 skip 2 with lines title 'H^1'
"""


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="norms.csv")
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--n-grid", type=int, default=4096)
    args = ap.parse_args()
    cfg = RunConfig(n_grid=args.n_grid, alpha_step=args.step, out=args.out).validate()
    code = cmd_norms(cfg)
    print(f"wrote {args.out} ({len(cfg.alphas())} rows)", file=sys.stderr)
    print(GNUPLOT.format(out=args.out))
    return code


if __name__ == "__main__":
    sys.exit(main())
