"""Balanced separations: exact search on small graphs, BFS-layer heuristics,
and the X-balanced separator used by the tree-decomposition builder.

A separation is stored by its two vertex sides; the separator is their
intersection.  Balance is tested on integers: each strict side may hold at
most ``floor(2n/3)`` vertices (``floor(2|X|/3)`` vertices of ``X`` for the
X-balanced variant).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, RefusalError
from .graph import Graph, bfs_layers, check_vertex_set, components

EXACT_LIMIT = 30
# Largest C(n, s) block the exact searches will walk through.
MAX_SUBSETS = 3_000_000


@dataclass(frozen=True)
class Separation:
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    size: int
    balanced: bool

    @property
    def separator(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.side_a) & set(self.side_b)))


def balance_limit(count: int) -> int:
    return (2 * count) // 3


def make_separation(G: Graph, separator: Iterable[int], strict_a: Iterable[int]) -> Separation:
    S = set(separator)
    A = set(strict_a) | S
    B = (set(range(G.n)) - set(strict_a)) | S
    lim = balance_limit(G.n)
    balanced = len(A - S) <= lim and len(B - S) <= lim
    return Separation(tuple(sorted(A)), tuple(sorted(B)), len(S), balanced)


def trivial_separation(G: Graph) -> Separation:
    """``(G, G - E(G))``: both sides are the whole vertex set."""
    everything = tuple(range(G.n))
    return Separation(everything, everything, G.n, True)


def check_separation(G: Graph, sep: Separation, X: Iterable[int] | None = None) -> list[str]:
    """Return the list of violated separation invariants (empty when valid)."""
    problems = []
    A, B = set(sep.side_a), set(sep.side_b)
    if any(not (0 <= v < G.n) for v in A | B):
        problems.append("side contains an invalid vertex")
    if A | B != set(range(G.n)):
        problems.append("sides do not cover the vertex set")
    S = A & B
    if sep.size != len(S):
        problems.append(f"size {sep.size} differs from |A & B| = {len(S)}")
    only_a, only_b = A - S, B - S
    for u in only_a:
        for w in G.adj[u]:
            if w in only_b:
                problems.append(f"edge {min(u, w)}-{max(u, w)} crosses the separation")
    lim = balance_limit(G.n)
    really_balanced = len(only_a) <= lim and len(only_b) <= lim
    if sep.balanced != really_balanced:
        problems.append("balanced flag is wrong")
    if X is not None:
        X = set(X)
        xl = balance_limit(len(X))
        if len(X - A) > xl or len(X - B) > xl:
            problems.append("separation is not X-balanced")
    return problems


def _split(weights: Sequence[int], lo: int, hi: int) -> list[bool] | None:
    """Choose items for side A so that their weight lies in ``[lo, hi]``.

    Exact bitset subset-sum; returns a membership list or None.
    """
    lo = max(lo, 0)
    if lo > hi:
        return None
    reach = [1]
    for w in weights:
        reach.append(reach[-1] | (reach[-1] << w))
    final = reach[-1]
    target = next((x for x in range(lo, hi + 1) if (final >> x) & 1), None)
    if target is None:
        return None
    take = [False] * len(weights)
    x = target
    for i in range(len(weights), 0, -1):
        if (reach[i - 1] >> x) & 1:
            continue
        take[i - 1] = True
        x -= weights[i - 1]
    return take


def _try_separator(G: Graph, S: Sequence[int], X: set[int] | None) -> Separation | None:
    comps = components(G, S)
    if X is None:
        weights = [len(c) for c in comps]
        lim = balance_limit(G.n)
    else:
        weights = [sum(1 for v in c if v in X) for c in comps]
        lim = balance_limit(len(X))
    total = sum(weights)
    take = _split(weights, total - lim, lim)
    if take is None:
        return None
    strict_a = [v for c, t in zip(comps, take) if t for v in c]
    return make_separation(G, S, strict_a)


def _subset_search(G, X, max_size):
    for s in range(max_size + 1):
        if math.comb(G.n, s) > MAX_SUBSETS:
            return None, s
        for S in itertools.combinations(range(G.n), s):
            sep = _try_separator(G, S, X)
            if sep is not None:
                return sep, s
    return None, max_size + 1


def _milp_min_balanced(G: Graph) -> Separation:
    from scipy.optimize import Bounds, LinearConstraint, milp

    n = G.n
    lim = balance_limit(n)
    # variable blocks: strict A (0..n-1), strict B (n..2n-1), separator (2n..3n-1)
    cost = np.concatenate([np.zeros(2 * n), np.ones(n)])
    rows, lows, highs = [], [], []
    for v in range(n):
        r = np.zeros(3 * n)
        r[[v, n + v, 2 * n + v]] = 1
        rows.append(r), lows.append(1), highs.append(1)
    for u, v in G.edges():
        for x, y in ((u, v), (v, u)):
            r = np.zeros(3 * n)
            r[x] = r[n + y] = 1
            rows.append(r), lows.append(0), highs.append(1)
    ra = np.zeros(3 * n)
    ra[:n] = 1
    rb = np.zeros(3 * n)
    rb[n:2 * n] = 1
    rows += [ra, rb, rb - ra]
    lows += [0, 0, -np.inf]
    highs += [lim, lim, 0]
    res = milp(
        cost,
        constraints=LinearConstraint(np.array(rows), lows, highs),
        integrality=np.ones(3 * n),
        bounds=Bounds(0, 1),
        options={"mip_rel_gap": 0.0},
    )
    if not res.success:
        raise RuntimeError(f"MILP solver failed: {res.message}")
    x = np.rint(res.x).astype(int)
    strict_a = [v for v in range(n) if x[v]]
    sep = [v for v in range(n) if x[2 * n + v]]
    return make_separation(G, sep, strict_a)


def exact_min_balanced_separation(G: Graph, n_limit: int = EXACT_LIMIT,
                                  method: str = "enumerate") -> Separation:
    """Minimum-size balanced separation.

    ``method="enumerate"`` tries separators of size 0, 1, 2, ... in order and
    splits the components of ``G - S`` by subset-sum.  ``method="milp"``
    solves the same problem as a 0/1 program (used beyond the enumeration
    range).  Both refuse graphs with more than ``n_limit`` vertices.
    """
    if G.n > n_limit:
        raise RefusalError(f"graph has {G.n} vertices, exact limit is {n_limit}")
    if G.n == 0:
        return Separation((), (), 0, True)
    if method == "milp":
        return _milp_min_balanced(G)
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    sep, _ = _subset_search(G, None, G.n)
    if sep is None:
        raise RefusalError("enumeration exceeded the subset budget; use method='milp'")
    return sep


def pseudo_peripheral(G: Graph, vertices: Iterable[int]) -> int:
    """A vertex of (nearly) maximum eccentricity inside one component."""
    allowed = set(vertices)
    v = min(allowed, key=lambda u: (G.degree(u), u))
    ecc = -1
    for _ in range(8):
        layers = bfs_layers(G, v, allowed)
        if len(layers) - 1 <= ecc:
            break
        ecc = len(layers) - 1
        v = min(layers[-1], key=lambda u: (G.degree(u), u))
    return v


def _layer_candidates(G: Graph, roots: Iterable[int]):
    seen = set()
    for r in roots:
        comp = _component_of(G, r)
        for layer in bfs_layers(G, r, comp):
            key = tuple(layer)
            if key not in seen:
                seen.add(key)
                yield key


def _component_of(G: Graph, v: int) -> set[int]:
    layers = bfs_layers(G, v)
    return {u for layer in layers for u in layer}


def heuristic_balanced_separation(G: Graph) -> Separation:
    """A balanced separation from BFS layers of the largest component.

    Takes the smallest layer whose removal admits a balanced split of the
    components; falls back to the trivial separation.
    """
    if G.n == 0:
        return Separation((), (), 0, True)
    best = _try_separator(G, (), None)
    if best is not None:
        return best
    comps = components(G)
    big = max(comps, key=len)
    root = pseudo_peripheral(G, big)
    candidates = sorted(_layer_candidates(G, [root]), key=lambda L: (len(L), L))
    for layer in candidates:
        sep = _try_separator(G, layer, None)
        if sep is not None:
            return sep
    return trivial_separation(G)


def _x_heuristic(G: Graph, X: set[int]) -> Separation:
    empty = _try_separator(G, (), X)
    if empty is not None:
        return empty
    candidates: list[tuple[int, ...]] = []
    if G.n <= 3000:
        candidates.extend((v,) for v in range(G.n))
    comps = components(G)
    heavy = max(comps, key=lambda c: sum(1 for v in c if v in X))
    roots = [pseudo_peripheral(G, heavy)]
    xs = sorted(v for v in heavy if v in X)
    if xs:
        roots.append(xs[0])
        far = bfs_layers(G, xs[0], set(heavy))
        roots.append(far[-1][0])
    candidates.extend(_layer_candidates(G, roots))
    candidates.sort(key=lambda S: (len(S), S))
    for S in candidates:
        if len(S) >= len(X):
            break
        sep = _try_separator(G, S, X)
        if sep is not None:
            return sep
    # X itself always works: no vertex of X is left on a strict side
    return make_separation(G, sorted(X), [v for v in range(G.n) if v not in X])


def x_balanced_separator(G: Graph, X: Iterable[int], size_budget: int,
                         exact_limit: int = EXACT_LIMIT) -> Separation:
    """Separation with ``|X - A|, |X - B| <= floor(2|X|/3)`` and size within budget.

    Exact minimum-size search on graphs with at most ``exact_limit`` vertices,
    BFS-layer heuristic otherwise.
    """
    Xs = set(check_vertex_set(G, X))
    if size_budget < 0:
        raise ValueError("size budget must be nonnegative")
    if G.n <= exact_limit:
        sep, reached = _subset_search(G, Xs, min(size_budget, G.n))
        if sep is not None:
            return sep
        if reached <= size_budget:
            # subset budget hit before the size budget; fall through
            sep = _x_heuristic(G, Xs)
        else:
            fallback = _x_heuristic(G, Xs)
            raise BudgetExceededError(
                f"no X-balanced separation of size <= {size_budget}",
                best_size=fallback.size)
    else:
        sep = _x_heuristic(G, Xs)
    if sep.size > size_budget:
        raise BudgetExceededError(
            f"best X-balanced separation found has size {sep.size} > {size_budget}",
            best_size=sep.size)
    return sep
