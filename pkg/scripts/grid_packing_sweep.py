"""Thickness and residual component size of the grid packing over n and eps."""
import argparse
import csv
import sys
from fractions import Fraction

from sepexp.fragility import grid_packing, residual_bound, thickness
from sepexp.graph import strong_product_cube


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--eps", nargs="+", default=["1", "1/2", "1/3", "1/4"])
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["n", "eps", "u", "support", "thickness", "max_component", "box_bound"])
    for n in range(2, args.n_max + 1):
        R = strong_product_cube(n)
        for text in args.eps:
            eps = Fraction(text)
            pi = grid_packing(n, eps)
            out.writerow([n, str(eps), pi.meta["u"], len(pi.entries), str(thickness(R, pi)),
                          residual_bound(R, pi), pi.meta["bound"]])


if __name__ == "__main__":
    main()
