"""Print the four-flag table for phi_alpha on a grid of alpha values.

With --generic the W norm comes from the optimizer bracket instead of the
closed form, which shows where the numeric path becomes undecided.
"""

import argparse

from hilbertpoints.classify import Settings, classification_sweep, default_alpha_grid


def mark(flag):
    return {True: "yes", False: "-", None: "?"}[flag]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("alphas", nargs="*", type=float)
    ap.add_argument("--generic", action="store_true")
    args = ap.parse_args()
    alphas = args.alphas or default_alpha_grid()
    reports = classification_sweep(alphas, Settings(use_family=not args.generic))
    print(f"{'alpha':>10} {'na_H1':>6} {'hp_H1':>6} {'na_W':>6} {'hp_W':>6} {'H1 residual':>12} {'W bracket':>24}")
    for a, r in zip(alphas, reports):
        flags = " ".join(f"{mark(f):>6}" for f in r.flags())
        print(f"{a:10.6f} {flags} {r.h1_residual:12.3e}   [{r.w_lower:.6f}, {r.w_upper:.6f}]")


if __name__ == "__main__":
    main()
