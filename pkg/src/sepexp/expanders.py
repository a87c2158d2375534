"""Random regular graphs, exact edge expansion at small scale, and the
separator lower bound for subdivided expanders.

A graph is an ``alpha``-expander when every ``S`` with ``|S| <= n/2`` has at
least ``alpha |S|`` edges leaving it.  Subdividing every edge of such a
3-regular graph ``m`` times gives ``n'`` vertices whose balanced separations
all have size at least ``n' / (3 (1 + 3m/2) (6/alpha + 2))``.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .errors import RefusalError
from .graph import Graph, components, subdivide_edges
from .separators import EXACT_LIMIT, exact_min_balanced_separation

EXPANSION_LIMIT = 24
EXPERIMENT_LIMIT = 20
# MILP handles the subdivided graphs the enumeration cannot reach
SEPARATOR_LIMIT = 128
CSV_HEADER = "n,d,alpha,m,n_prime,separator_found,bound"


def _pairing(n: int, d: int, rng: random.Random, max_tries: int) -> Graph:
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        for a, b in zip(points[::2], points[1::2]):
            e = (a, b) if a < b else (b, a)
            if a == b or e in edges:
                break
            edges.add(e)
        else:
            return Graph.from_edges(n, edges)
    raise RuntimeError(f"no simple {d}-regular graph on {n} vertices after {max_tries} pairings")


def random_regular(n: int, d: int, rng_seed: int, max_tries: int = 100_000) -> Graph:
    """``d``-regular simple graph from the pairing model, rejecting loops and multi-edges."""
    if d < 0 or n <= d or (n * d) % 2:
        raise ValueError(f"need n > d >= 0 and n*d even (n={n}, d={d})")
    return _pairing(n, d, random.Random(rng_seed), max_tries)


def edge_expansion_exact(G: Graph, n_limit: int = EXPANSION_LIMIT) -> Fraction:
    """``min |E(S, V-S)| / |S|`` over nonempty ``S`` with ``|S| <= n/2``."""
    n = G.n
    if n > n_limit:
        raise RefusalError(f"graph has {n} vertices, limit is {n_limit}")
    if n < 2:
        raise ValueError("edge expansion needs at least two vertices")
    us = np.array([u for u, _ in G.edges()], dtype=np.int64)
    vs = np.array([v for _, v in G.edges()], dtype=np.int64)
    best = [None] * (n // 2 + 1)
    chunk = 1 << 18
    for start in range(1, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = (masks[:, None] >> np.arange(n, dtype=np.int64)) & 1
        size = bits.sum(axis=1)
        if len(us):
            cut = (bits[:, us] ^ bits[:, vs]).sum(axis=1)
        else:
            cut = np.zeros(len(masks), dtype=np.int64)
        for s in range(1, n // 2 + 1):
            sel = cut[size == s]
            if sel.size:
                low = int(sel.min())
                best[s] = low if best[s] is None else min(best[s], low)
    return min(Fraction(best[s], s) for s in range(1, n // 2 + 1))


def expsep_bound(n_prime: int, m: int, alpha):
    """``n' / (3 (1 + 3m/2) (6/alpha + 2))``; exact when ``alpha`` is rational."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if m < 0 or n_prime < 1:
        raise ValueError("need m >= 0 and n_prime >= 1")
    if isinstance(alpha, float):
        return n_prime / (3 * (1 + 1.5 * m) * (6 / alpha + 2))
    alpha = Fraction(alpha)
    return Fraction(n_prime) / (3 * (1 + Fraction(3 * m, 2)) * (6 / alpha + 2))


@dataclass
class ExpanderReport:
    n: int
    d: int
    alpha_exact: Fraction
    m_subdiv: int
    n_prime: int
    separator_found: int
    bound: Fraction
    seed: int
    resamples: int = 0

    @property
    def holds(self) -> bool:
        return self.separator_found >= self.bound

    def to_json(self) -> str:
        doc = asdict(self)
        doc["alpha_exact"] = str(self.alpha_exact)
        doc["bound"] = str(self.bound)
        doc["holds"] = self.holds
        return json.dumps(doc)

    def csv_row(self) -> str:
        return (f"{self.n},{self.d},{float(self.alpha_exact)!r},{self.m_subdiv},"
                f"{self.n_prime},{self.separator_found},{float(self.bound)!r}")


def expander_separator_experiment(n: int, m: int, rng_seed: int, d: int = 3,
                                  max_resamples: int = 1000) -> ExpanderReport:
    """Sample a connected cubic graph, measure its expansion exactly, subdivide
    every edge ``m`` times and compare the exact minimum balanced separation
    with the lower bound."""
    if n % 2 or n > EXPERIMENT_LIMIT:
        raise RefusalError(f"n must be even and at most {EXPERIMENT_LIMIT}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    n_prime = n + m * (n * d // 2)
    if n_prime > SEPARATOR_LIMIT:
        raise RefusalError(f"subdivided graph has {n_prime} vertices, limit is {SEPARATOR_LIMIT}")
    rng = random.Random(rng_seed)
    for resamples in range(max_resamples):
        G = _pairing(n, d, rng, 100_000)
        if len(components(G)) == 1:
            break
    else:
        raise RuntimeError("no connected sample within the resample budget")
    alpha = edge_expansion_exact(G)
    S = subdivide_edges(G, m)
    method = "enumerate" if S.n <= EXACT_LIMIT else "milp"
    sep = exact_min_balanced_separation(S, n_limit=SEPARATOR_LIMIT, method=method)
    return ExpanderReport(n, d, alpha, m, S.n, sep.size, expsep_bound(S.n, m, alpha),
                          rng_seed, resamples)
