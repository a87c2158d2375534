"""Iterated packing on long paths and cycles.

Honest constants leave every desk-sized graph in the trivial branch, so this
runs the same algebra with the span term and treewidth constant overridden
and reports how the measured thickness compares with eps.
"""
import argparse
import csv
import math
import random
import sys

from sepexp.fragility import iterated_vs_packing, split_constants, thickness
from sepexp.graph import Graph, cycle_graph, path_graph


def shuffled(G, seed):
    perm = list(range(G.n))
    random.Random(seed).shuffle(perm)
    return Graph.from_edges(G.n, [(perm[u], perm[v]) for u, v in G.edges()])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[3000, 10000])
    ap.add_argument("--span-term", type=float, default=2)
    ap.add_argument("--eps", type=float, nargs="+", default=[1.0, 0.9])
    ap.add_argument("--samples", type=int, default=200)
    args = ap.parse_args()
    sc = split_constants(1, 0, 0.5, 2, span_term=args.span_term, c1=0)
    out = csv.writer(sys.stdout)
    out.writerow(["graph", "n", "eps", "rounds", "k", "thickness", "max_component", "log_target"])
    for n in args.sizes:
        for name, G in [("path", path_graph(n)), ("cycle", cycle_graph(n)),
                        ("shuffled-path", shuffled(path_graph(n), n))]:
            for eps in args.eps:
                res = iterated_vs_packing(G, eps, sc, mode="sample",
                                          sample_count=args.samples, rng_seed=1)
                ks = "/".join(str(r.k) for r in res.rounds)
                out.writerow([name, n, eps, res.t, ks, f"{float(thickness(G, res.packing)):.4f}",
                              res.component_bound, f"{res.log_target_bound:.2f}"])
                sys.stdout.flush()


if __name__ == "__main__":
    main()
