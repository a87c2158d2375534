"""Shallow-minor density profile of a few small graphs, exact and greedy."""
import argparse
import csv
import random
import sys

from sepexp.graph import (Graph, cycle_graph, grid_graph, petersen_graph,
                          strong_product_cube)
from sepexp.minors import NABLA_BRUTE_LIMIT, expansion_reference, nabla_brute, nabla_greedy


def corpus(seed):
    rng = random.Random(seed)
    yield "petersen", petersen_graph()
    yield "C10", cycle_graph(10)
    yield "grid3x3", grid_graph(3, 3)
    yield "R_2", strong_product_cube(2)
    yield "R_3", strong_product_cube(3)
    yield "grid6x6", grid_graph(6, 6)
    n = 40
    yield "gnp40", Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                                        if rng.random() < 0.1])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--K", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["graph", "n", "k", "brute", "greedy", "reference"])
    for name, G in corpus(args.seed):
        for k in range(args.K + 1):
            brute = str(nabla_brute(G, k).density) if G.n <= NABLA_BRUTE_LIMIT else ""
            out.writerow([name, G.n, k, brute, str(nabla_greedy(G, k).density),
                          f"{expansion_reference(k):.4f}"])
            sys.stdout.flush()


if __name__ == "__main__":
    main()
