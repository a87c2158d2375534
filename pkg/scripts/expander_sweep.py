"""Exact separator size of subdivided random cubic graphs against the lower bound."""
import argparse
import sys

from sepexp.expanders import CSV_HEADER, expander_separator_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--m", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()
    print(CSV_HEADER + ",seed,holds")
    bad = 0
    for n in args.n:
        for m in args.m:
            for seed in range(args.seeds):
                rep = expander_separator_experiment(n, m, seed)
                bad += not rep.holds
                print(f"{rep.csv_row()},{seed},{rep.holds}", flush=True)
    print(f"# violations: {bad}", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
