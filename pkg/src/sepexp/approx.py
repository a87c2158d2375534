"""Packing-driven approximation: independent sets and fixed-subgraph testing.

Each support set ``X`` of a complementary packing leaves only small
components, so ``G - X`` is solved exactly component by component.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RefusalError
from .fragility import (FractionalPacking, WitnessClassSpec, as_fraction,
                        thickness, validate_complementary, FLOAT_TOL)
from .graph import Graph, components, induced_subgraph

MIS_LIMIT = 30
BRUTE_LIMIT = 30


@dataclass(frozen=True)
class IndependentSetResult:
    vertices: tuple[int, ...]
    size: int
    support_index: int | None = None


def is_independent(G: Graph, S) -> bool:
    S = set(S)
    return all(w not in S for v in S for w in G.adj[v])


def _masks(G: Graph, comp):
    index = {v: i for i, v in enumerate(comp)}
    return [sum(1 << index[w] for w in G.adj[v]) for v in comp]


def brute_alpha(G: Graph) -> int:
    """Independence number by include/exclude search in vertex order.

    Serves as the oracle for the faster solver below; components above
    30 vertices are refused.
    """
    total = 0
    for comp in components(G):
        if len(comp) > BRUTE_LIMIT:
            raise RefusalError(f"component of {len(comp)} vertices exceeds {BRUTE_LIMIT}")
        adj = _masks(G, comp)
        size = len(comp)
        best = 0

        def go(i, allowed, count):
            nonlocal best
            if count + bin(allowed >> i).count("1") <= best:
                return
            if i == size:
                best = count
                return
            if (allowed >> i) & 1:
                go(i + 1, allowed & ~adj[i], count + 1)
            go(i + 1, allowed & ~(1 << i), count)

        go(0, (1 << size) - 1, 0)
        total += best
    return total


def _mis_mask(adj: list[int], mask: int, memo: dict) -> int:
    if mask in memo:
        return memo[mask]
    if mask == 0:
        return 0
    # a vertex of degree <= 1 is always in some maximum independent set
    best_v, best_deg = -1, -1
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        d = bin(adj[v] & mask).count("1")
        if d <= 1:
            res = (1 << v) | _mis_mask(adj, mask & ~(1 << v) & ~adj[v], memo)
            memo[mask] = res
            return res
        if d > best_deg:
            best_v, best_deg = v, d
        m ^= low
    v = best_v
    without = _mis_mask(adj, mask & ~(1 << v), memo)
    with_v = (1 << v) | _mis_mask(adj, mask & ~(1 << v) & ~adj[v], memo)
    res = with_v if bin(with_v).count("1") >= bin(without).count("1") else without
    memo[mask] = res
    return res


def exact_max_independent_set(G: Graph, comp_bound: int) -> IndependentSetResult:
    """Maximum independent set when every component has at most ``comp_bound`` vertices."""
    if comp_bound > MIS_LIMIT:
        raise RefusalError(f"component bound {comp_bound} exceeds {MIS_LIMIT}")
    chosen = []
    for comp in components(G):
        if len(comp) > comp_bound:
            raise ValueError(f"component {comp[:8]}... has {len(comp)} > {comp_bound} vertices")
        adj = _masks(G, comp)
        sol = _mis_mask(adj, (1 << len(comp)) - 1, {})
        chosen.extend(comp[i] for i in range(len(comp)) if (sol >> i) & 1)
    chosen.sort()
    return IndependentSetResult(tuple(chosen), len(chosen))


def _thickness_at_most(G, pi, limit) -> bool:
    th = thickness(G, pi)
    if isinstance(th, Fraction) and not isinstance(limit, float):
        return th <= as_fraction(limit)
    return float(th) <= float(limit) + FLOAT_TOL


def _residual(G: Graph, X):
    removed = set(X)
    return induced_subgraph(G, [v for v in range(G.n) if v not in removed])


def ptas_independent_set(G: Graph, eps, pi: FractionalPacking, w: WitnessClassSpec) -> IndependentSetResult:
    """Best of the exact optima of ``G - X`` over the support of ``pi``.

    With thickness at most ``eps`` some ``X`` meets an optimum in at most an
    ``eps`` fraction, so the result has size at least ``(1 - eps) alpha(G)``.
    """
    if not _thickness_at_most(G, pi, eps):
        raise ValueError(f"packing thickness {thickness(G, pi)} exceeds eps={eps}")
    check = validate_complementary(G, pi, w)
    if not check:
        raise ValueError(f"support set {check.set_index} leaves a component of "
                         f"{len(check.component)} > {w.bound} vertices")
    if w.bound > MIS_LIMIT:
        raise RefusalError(f"witness bound {w.bound} exceeds exact range {MIS_LIMIT}")
    best = None
    for idx, (X, wt) in enumerate(pi.entries):
        if wt == 0:
            continue
        H, labels = _residual(G, X)
        res = exact_max_independent_set(H, w.bound)
        if best is None or res.size > best.size:
            best = IndependentSetResult(tuple(labels[i] for i in res.vertices), res.size, idx)
    return best


# -- subgraph testing -----------------------------------------------------

def _search_order(H: Graph) -> list[int]:
    order, placed = [], set()
    while len(order) < H.n:
        rest = [v for v in range(H.n) if v not in placed]
        v = max(rest, key=lambda u: (sum(1 for x in H.adj[u] if x in placed), H.degree(u), -u))
        order.append(v)
        placed.add(v)
    return order


def find_subgraph(G: Graph, H: Graph) -> dict[int, int] | None:
    """An injective map ``V(H) -> V(G)`` preserving edges, or None.

    Backtracking; candidates come from the image of an already mapped
    neighbour, and vertices of too small degree are pruned.
    """
    if H.n == 0:
        return {}
    if H.n > G.n or H.m > G.m:
        return None
    order = _search_order(H)
    pos = {v: i for i, v in enumerate(order)}
    back = [[x for x in H.adj[v] if pos[x] < pos[v]] for v in order]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i):
        if i == len(order):
            return True
        h = order[i]
        need = H.degree(h)
        prev = back[i]
        pool = G.adj[mapping[prev[0]]] if prev else range(G.n)
        for c in pool:
            if c in used or G.degree(c) < need:
                continue
            if all(G.has_edge(c, mapping[x]) for x in prev):
                mapping[h] = c
                used.add(c)
                if extend(i + 1):
                    return True
                del mapping[h]
                used.discard(c)
        return False

    return dict(mapping) if extend(0) else None


def subgraph_test(G: Graph, H: Graph, pi: FractionalPacking, w: WitnessClassSpec) -> bool:
    """Whether ``H`` is a subgraph of ``G``, checked inside each ``G - X``.

    Requires thickness at most ``1/(|V(H)| + 1)`` so that some support set
    misses any fixed copy of ``H``.
    """
    limit = Fraction(1, H.n + 1)
    if not _thickness_at_most(G, pi, limit):
        raise RefusalError(f"packing thickness {thickness(G, pi)} exceeds 1/{H.n + 1}; "
                           "a negative answer would not be reliable")
    check = validate_complementary(G, pi, w)
    if not check:
        raise ValueError(f"support set {check.set_index} violates the witness bound {w.bound}")
    connected = len(components(H)) <= 1
    for X, wt in pi.entries:
        if wt == 0:
            continue
        R, _ = _residual(G, X)
        if connected:
            for comp in components(R):
                if len(comp) >= H.n:
                    C, _ = induced_subgraph(R, comp)
                    if find_subgraph(C, H) is not None:
                        return True
        elif find_subgraph(R, H) is not None:
            return True
    return False
