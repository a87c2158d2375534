"""Shared strategies and independent oracles for the test-suite."""
import itertools
import random

import networkx as nx
from hypothesis import strategies as st

from sepexp.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def gnp(n, p, rng):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_subcubic(n, rng, tries=200):
    """Random graph with maximum degree at most 3."""
    deg = [0] * n
    edges = set()
    for _ in range(tries):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v and deg[u] < 3 and deg[v] < 3 and (min(u, v), max(u, v)) not in edges:
            edges.add((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, edges)


def random_subcubic_tree(n, rng):
    edges, deg = [], [0] * n
    for v in range(1, n):
        u = rng.choice([x for x in range(v) if deg[x] < 3])
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, edges)


def random_grid_subgraph(rows, cols, keep, rng):
    from sepexp.graph import grid_graph, induced_subgraph
    G = grid_graph(rows, cols)
    return induced_subgraph(G, [v for v in range(G.n) if rng.random() < keep])[0]


def shuffled(G, seed):
    perm = list(range(G.n))
    random.Random(seed).shuffle(perm)
    return Graph.from_edges(G.n, [(perm[u], perm[v]) for u, v in G.edges()])


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def alpha_oracle(G):
    """Independence number as the maximum clique of the complement."""
    if G.n == 0:
        return 0
    _, size = nx.max_weight_clique(nx.complement(to_nx(G)), weight=None)
    return size


def contains_oracle(G, H):
    return nx.algorithms.isomorphism.GraphMatcher(to_nx(G), to_nx(H)).subgraph_is_monomorphic()


def min_balanced_oracle(G):
    """Brute force over all assignments of vertices to (A only, B only, both)."""
    lim = (2 * G.n) // 3
    best = G.n
    for labels in itertools.product((0, 1, 2), repeat=G.n):
        s = labels.count(2)
        if s >= best or labels.count(0) > lim or labels.count(1) > lim:
            continue
        if all({labels[u], labels[v]} != {0, 1} for u, v in G.edges()):
            best = s
    return best


def nabla_oracle(G, k):
    """Maximum density over partial partitions into connected parts of radius <= k."""
    NX = to_nx(G)
    best = 0
    n = G.n

    def ok(part):
        S = NX.subgraph(part)
        return nx.is_connected(S) and nx.radius(S) <= k

    def go(i, parts):
        nonlocal best
        if i == n:
            if parts:
                owner = {v: j for j, p in enumerate(parts) for v in p}
                es = {tuple(sorted((owner[u], owner[v]))) for u, v in G.edges()
                      if u in owner and v in owner and owner[u] != owner[v]}
                if all(ok(p) for p in parts):
                    from fractions import Fraction
                    best = max(best, Fraction(len(es), len(parts)))
            return
        go(i + 1, parts)  # vertex i deleted
        for p in parts:
            p.append(i)
            go(i + 1, parts)
            p.pop()
        parts.append([i])
        go(i + 1, parts)
        parts.pop()

    go(0, [])
    return best
