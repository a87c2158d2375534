"""Shallow-minor certificates, density of shallow minors, and extraction of
shallow clique minors from dense graphs.

A certificate of ``H`` as a ``d``-minor of ``G`` gives, for every vertex ``i``
of ``H``, a rooted tree in ``G`` of depth at most ``d`` (list of
``(vertex, parent)`` pairs, root first with parent ``None``), the trees being
vertex-disjoint, plus one edge of ``G`` per edge ``ij`` of ``H`` joining tree
``i`` to tree ``j``.
"""
from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .errors import RefusalError
from .fragility import _robust_ceil
from .graph import Graph, complete_graph, components, induced_subgraph

NABLA_BRUTE_LIMIT = 10
K1T_EXACT_LIMIT = 5
DEFAULT_K1T_BUDGET = 200_000


# -- certificates ---------------------------------------------------------

Tree = list[tuple[int, "int | None"]]


@dataclass
class MinorCertificate:
    depth: int
    trees: dict[int, Tree]
    witness_edges: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def branch_set(self, i: int) -> list[int]:
        return [v for v, _ in self.trees[i]]

    def measured_depth(self) -> int:
        return max((_tree_depth(t) for t in self.trees.values()), default=0)

    def to_json(self) -> str:
        trees = [{"model_vertex": i, "nodes": [[v, p] for v, p in self.trees[i]]}
                 for i in sorted(self.trees)]
        wit = [[i, j, u, v] for (i, j), (u, v) in sorted(self.witness_edges.items())]
        return json.dumps({"depth": self.depth, "trees": trees, "witness_edges": wit})

    @classmethod
    def from_json(cls, text: str) -> "MinorCertificate":
        doc = json.loads(text)
        trees = {t["model_vertex"]: [(v, p) for v, p in t["nodes"]] for t in doc["trees"]}
        wit = {(i, j): (u, v) for i, j, u, v in doc["witness_edges"]}
        return cls(doc["depth"], trees, wit)

    def __eq__(self, other):
        if not isinstance(other, MinorCertificate):
            return NotImplemented
        return (self.depth == other.depth and self.trees == other.trees
                and self.witness_edges == other.witness_edges)


def _tree_depth(tree: Tree) -> int:
    parent = dict(tree)
    depth: dict[int, int] = {}
    best = 0
    for v, _ in tree:
        chain = []
        x = v
        while x is not None and x not in depth:
            if x in chain or x not in parent:
                return math.inf  # cycle or dangling parent, reported by the verifier
            chain.append(x)
            x = parent[x]
        d = -1 if x is None else depth[x]
        for y in reversed(chain):
            d += 1
            depth[y] = d
        best = max(best, depth[v])
    return best


def identity_certificate(G: Graph) -> MinorCertificate:
    """``G`` as a 0-minor of itself."""
    return MinorCertificate(0, {v: [(v, None)] for v in range(G.n)},
                            {(u, v): (u, v) for u, v in G.edges()})


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self):
        return self.ok


def verify_certificate(G: Graph, H: Graph, cert: MinorCertificate) -> CertificateCheck:
    bad: list[str] = []
    if set(cert.trees) != set(range(H.n)):
        bad.append(f"tree keys {sorted(cert.trees)} do not match model vertices 0..{H.n - 1}")
    owner: dict[int, int] = {}
    overlap = False
    for i, tree in cert.trees.items():
        if not tree:
            bad.append(f"tree {i} is empty")
            continue
        if tree[0][1] is not None:
            bad.append(f"tree {i} does not start with its root")
        members = [v for v, _ in tree]
        if len(set(members)) != len(members):
            bad.append(f"tree {i} repeats a vertex")
        for v, p in tree:
            if not (isinstance(v, int) and 0 <= v < G.n):
                bad.append(f"tree {i} has invalid vertex {v}")
                continue
            if v in owner and owner[v] != i:
                overlap = True
            owner[v] = i
            if p is None:
                if v != tree[0][0]:
                    bad.append(f"tree {i} has a second root {v}")
            elif p not in members:
                bad.append(f"tree {i}: parent {p} of {v} lies outside the tree")
            elif not (0 <= p < G.n) or not G.has_edge(v, p):
                bad.append(f"tree {i}: {v}-{p} is not an edge")
        d = _tree_depth(tree)
        if d == math.inf:
            bad.append(f"tree {i} parent pointers do not form a tree")
        elif d > cert.depth:
            bad.append(f"tree {i} has depth {d} > {cert.depth}")
    if overlap:
        bad.append("trees not disjoint")
    model_edges = set(H.edges())
    for key in cert.witness_edges:
        if tuple(key) not in model_edges:
            bad.append(f"witness for non-edge {key}")
    for i, j in model_edges:
        if (i, j) not in cert.witness_edges:
            bad.append(f"missing witness edge for {i}-{j}")
            continue
        u, v = cert.witness_edges[(i, j)]
        if not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
            bad.append(f"witness {u}-{v} for {i}-{j} is not an edge")
        elif owner.get(u) != i or owner.get(v) != j:
            bad.append(f"witness {u}-{v} does not join trees {i} and {j}")
    return CertificateCheck(not bad, tuple(bad))


def composed_depth(d1: int, d2: int) -> int:
    return d1 + d2 * (2 * d1 + 1)


def _oriented(cert: MinorCertificate, a: int, b: int) -> tuple[int, int]:
    """Witness edge between trees ``a`` and ``b``, first endpoint in tree ``a``."""
    if a < b:
        return cert.witness_edges[(a, b)]
    u, v = cert.witness_edges[(b, a)]
    return v, u


def compose_certificates(G: Graph, Hp: Graph, H: Graph,
                         cert1: MinorCertificate, cert2: MinorCertificate) -> MinorCertificate:
    """``cert1`` shows ``Hp`` in ``G``, ``cert2`` shows ``H`` in ``Hp``; return ``H`` in ``G``.

    Each ``H``-tree is the union of the ``G``-trees of its ``Hp``-vertices,
    joined along the witnesses of its ``Hp``-tree edges and re-rooted by BFS
    from the root of the image of its ``Hp``-root.
    """
    for name, (big, small, cert) in (("first", (G, Hp, cert1)), ("second", (Hp, H, cert2))):
        check = verify_certificate(big, small, cert)
        if not check:
            raise ValueError(f"{name} certificate invalid: {check.violations[0]}")
    trees: dict[int, Tree] = {}
    for x, tree2 in cert2.trees.items():
        adj: dict[int, list[int]] = {}

        def link(a, b):
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)

        for y, py in tree2:
            for v, p in cert1.trees[y]:
                adj.setdefault(v, [])
                if p is not None:
                    link(v, p)
            if py is not None:
                link(*_oriented(cert1, y, py))
        root = cert1.trees[tree2[0][0]][0][0]
        order: Tree = [(root, None)]
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    order.append((w, u))
                    queue.append(w)
        trees[x] = order
    witness = {}
    for (x1, x2) in cert2.witness_edges:
        y1, y2 = cert2.witness_edges[(x1, x2)]
        witness[(x1, x2)] = _oriented(cert1, y1, y2)
    return MinorCertificate(composed_depth(cert1.depth, cert2.depth), trees, witness)


# -- density of shallow minors ----------------------------------------------

@dataclass
class DensityReport:
    k: int
    vertices: int
    edges: int
    density: Fraction
    certificate: MinorCertificate
    model: Graph

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "vertices": self.vertices, "edges": self.edges,
                           "density": str(self.density),
                           "certificate": json.loads(self.certificate.to_json())})


def _density(e: int, v: int) -> Fraction:
    return Fraction(e, v) if v else Fraction(0)


def _bfs_tree(G: Graph, center: int, part: set[int]) -> Tree:
    tree: Tree = [(center, None)]
    seen = {center}
    queue = deque([center])
    while queue:
        u = queue.popleft()
        for w in G.adj[u]:
            if w in part and w not in seen:
                seen.add(w)
                tree.append((w, u))
                queue.append(w)
    return tree


def _report(G: Graph, k: int, parts: list[tuple[int, list[int]]]) -> DensityReport:
    """Certificate and model for the contraction of the given (center, part) list."""
    owner = {v: i for i, (_, part) in enumerate(parts) for v in part}
    witness: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in G.edges():
        a, b = owner.get(u), owner.get(v)
        if a is None or b is None or a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key not in witness:
            witness[key] = (u, v) if a < b else (v, u)
    trees = {i: _bfs_tree(G, c, set(part)) for i, (c, part) in enumerate(parts)}
    model = Graph.from_edges(len(parts), witness)
    cert = MinorCertificate(k, trees, witness)
    return DensityReport(k, model.n, model.m, _density(model.m, model.n), cert, model)


def _densest_exact(adj: tuple[int, ...]) -> tuple[Fraction, int]:
    """Densest subgraph of a graph given as bitmask adjacency (at most ~12 vertices)."""
    h = len(adj)
    edges = [0] * (1 << h)
    be, bv, best_mask = 0, 1, 0
    for mask in range(1, 1 << h):
        low = mask & -mask
        rest = mask ^ low
        e = edges[mask] = edges[rest] + (adj[low.bit_length() - 1] & rest).bit_count()
        size = mask.bit_count()
        if e * bv > be * size:
            be, bv, best_mask = e, size, mask
    return Fraction(be, bv), best_mask


def _radius_center(G: Graph, mask: int, k: int) -> int | None:
    """A vertex of ``mask`` reaching all of ``mask`` within distance ``k`` inside it."""
    verts = [v for v in range(G.n) if (mask >> v) & 1]
    for c in verts:
        dist = {c: 0}
        queue = deque([c])
        while queue:
            u = queue.popleft()
            if dist[u] == k:
                continue
            for w in G.adj[u]:
                if (mask >> w) & 1 and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if len(dist) == len(verts):
            return c
    return None


def nabla_brute(G: Graph, k: int) -> DensityReport:
    """Exact maximum density over all ``k``-minors (at most 10 vertices).

    Enumerates every partition of ``V(G)`` into connected parts of radius at
    most ``k`` and takes the densest subgraph of each contraction; partial
    partitions are covered because dropping parts is a subgraph deletion.
    """
    if G.n > NABLA_BRUTE_LIMIT:
        raise RefusalError(f"graph has {G.n} vertices, limit is {NABLA_BRUTE_LIMIT}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = G.n
    if n == 0:
        return DensityReport(k, 0, 0, Fraction(0), MinorCertificate(k, {}, {}), Graph(0, []))
    nbr = [sum(1 << w for w in G.adj[v]) for v in range(n)]
    centers: dict[int, int] = {}
    for mask in range(1, 1 << n):
        c = _radius_center(G, mask, k)
        if c is not None:
            centers[mask] = c
    by_low: dict[int, list[int]] = {}
    for mask in centers:
        by_low.setdefault((mask & -mask).bit_length() - 1, []).append(mask)
    best = [Fraction(-1), None]
    parts: list[int] = []
    densest: dict[tuple[int, ...], tuple[Fraction, int]] = {}

    def finish():
        h = len(parts)
        if best[0] >= Fraction(h - 1, 2):
            return  # no graph on h vertices beats the incumbent
        pn = [0] * h
        for i in range(h):
            reach = 0
            for v in range(n):
                if (parts[i] >> v) & 1:
                    reach |= nbr[v]
            pn[i] = reach
        adj = tuple(sum(1 << j for j in range(h) if j != i and pn[i] & parts[j]) for i in range(h))
        if adj not in densest:
            densest[adj] = _densest_exact(adj)
        dens, sub = densest[adj]
        if dens > best[0]:
            best[0] = dens
            best[1] = [parts[i] for i in range(h) if (sub >> i) & 1] or [parts[0]]

    def go(remaining):
        if remaining == 0:
            finish()
            return
        low = (remaining & -remaining).bit_length() - 1
        for mask in by_low[low]:
            if mask & remaining == mask:
                parts.append(mask)
                go(remaining & ~mask)
                parts.pop()

    go((1 << n) - 1)
    chosen = [(centers[m], [v for v in range(n) if (m >> v) & 1]) for m in best[1]]
    return _report(G, k, chosen)


def _peel_densest(adj: list[set[int]], alive: list[int]) -> list[int]:
    """Charikar peeling: the best prefix density while deleting min-degree vertices."""
    alive = list(alive)
    deg = {v: len(adj[v]) for v in alive}
    e = sum(deg.values()) // 2
    current = set(alive)
    best = _density(e, len(current))
    removed_order = []
    best_cut = 0
    while current:
        v = min(current, key=lambda x: (deg[x], x))
        current.discard(v)
        removed_order.append(v)
        e -= deg[v]
        for w in adj[v]:
            if w in current:
                deg[w] -= 1
        if current and _density(e, len(current)) > best:
            best = _density(e, len(current))
            best_cut = len(removed_order)
    drop = set(removed_order[:best_cut])
    return [v for v in alive if v not in drop]


def nabla_greedy(G: Graph, k: int) -> DensityReport:
    """Certified lower bound on the ``k``-minor density.

    Grows contracted parts one vertex at a time: an uncontracted vertex may
    join an adjacent part if it stays within distance ``k`` of the part's
    centre, and the move raising the density most is taken.  The densest
    subgraph of the final contraction is then found by min-degree peeling.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if G.n == 0:
        return DensityReport(k, 0, 0, Fraction(0), MinorCertificate(k, {}, {}), Graph(0, []))
    part_of = list(range(G.n))
    members: dict[int, list[int]] = {v: [v] for v in range(G.n)}
    level = [0] * G.n  # distance from the part centre inside the part
    adj: dict[int, set[int]] = {v: set(G.adj[v]) for v in range(G.n)}
    e = G.m
    while k >= 1:
        h = len(members)
        best = None
        for x in range(G.n):
            if len(members[part_of[x]]) > 1 or part_of[x] != x:
                continue
            for P in sorted(adj[x]):
                reach = min((level[y] for y in G.adj[x] if part_of[y] == P), default=k)
                if reach + 1 > k:
                    continue
                new_e = e - 1 - len(adj[x] & adj[P])
                if new_e * h > e * (h - 1) and (best is None or new_e > best[0]):
                    best = (new_e, x, P, reach + 1)
        if best is None:
            break
        e, x, P, lvl = best
        for Q in adj.pop(x):
            adj[Q].discard(x)
            if Q != P:
                adj[Q].add(P)
                adj[P].add(Q)
        del members[x]
        members[P].append(x)
        part_of[x] = P
        level[x] = lvl
    keep = _peel_densest(adj, sorted(members))
    chosen = [(P, sorted(members[P])) for P in keep]
    return _report(G, k, chosen)


# -- K'_t search ----------------------------------------------------------------

def _match(pairs, options, banned) -> dict | None:
    """Distinct representatives: pair -> vertex from ``options[pair]`` avoiding ``banned``."""
    owner: dict[int, tuple] = {}

    def augment(p, seen):
        for x in options[p]:
            if x in banned or x in seen:
                continue
            seen.add(x)
            if x not in owner or augment(owner[x], seen):
                owner[x] = p
                return True
        return False

    for p in pairs:
        if not augment(p, set()):
            return None
    return {p: x for x, p in owner.items()}


def find_k1t(G: Graph, t: int, budget: int | None = None) -> MinorCertificate | None:
    """A ``K'_t`` subgraph of ``G`` as a depth-1 certificate of ``K_t``, or None.

    Branch vertices are chosen in increasing order; subdivision vertices are
    assigned by bipartite matching over common neighbours.  Exact (and
    exhaustive) for ``t <= 5``; larger ``t`` needs an explicit node budget.
    """
    if t <= 0:
        return MinorCertificate(1, {}, {})
    if t == 1:
        return MinorCertificate(1, {0: [(0, None)]}, {}) if G.n else None
    if t > K1T_EXACT_LIMIT and budget is None:
        raise RefusalError(f"t={t} exceeds exact range {K1T_EXACT_LIMIT}; pass a budget")
    if G.n < t + t * (t - 1) // 2:
        return None
    cands = [v for v in range(G.n) if G.degree(v) >= t - 1]
    common = {}
    nodes = 0

    def opts(a, b):
        key = (a, b)
        if key not in common:
            common[key] = sorted(G.adjsets[a] & G.adjsets[b])
        return common[key]

    chosen: list[int] = []

    def go(start):
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise RefusalError(f"K'_{t} search exceeded budget of {budget} nodes")
        pairs = list(combinations(range(len(chosen)), 2))
        options = {(i, j): opts(chosen[i], chosen[j]) for i, j in pairs}
        match = _match(pairs, options, set(chosen))
        if match is None:
            return None
        if len(chosen) == t:
            return match
        for idx in range(start, len(cands)):
            v = cands[idx]
            if all(opts(u, v) for u in chosen):
                chosen.append(v)
                res = go(idx + 1)
                if res is not None:
                    return res
                chosen.pop()
        return None

    match = go(0)
    if match is None:
        return None
    trees = {i: [(chosen[i], None)] for i in range(t)}
    witness = {}
    for (i, j), s in sorted(match.items()):
        trees[i].append((s, chosen[i]))
        witness[(i, j)] = (s, chosen[j])
    return MinorCertificate(1, trees, witness)


# -- densify or clique -----------------------------------------------------------

@dataclass
class DenseMinor:
    graph: Graph
    certificate: MinorCertificate
    diagnostics: dict = field(default_factory=dict)
    kind: str = "dense"


@dataclass
class CliqueMinor:
    t: int
    certificate: MinorCertificate
    diagnostics: dict = field(default_factory=dict)
    kind: str = "clique"


@dataclass
class Failed:
    stage: str
    diagnostics: dict = field(default_factory=dict)
    kind: str = "failed"


def _peel(G: Graph, t: int, eps: float, c: float) -> list[int]:
    alive = set(range(G.n))
    deg = [G.degree(v) for v in range(G.n)]
    changed = True
    while changed and alive:
        changed = False
        thr = c * t ** 4 * len(alive) ** eps
        low = [v for v in sorted(alive) if deg[v] <= thr]
        if low:
            v = low[0]
            alive.discard(v)
            for w in G.adj[v]:
                if w in alive:
                    deg[w] -= 1
            changed = True
    return sorted(alive)


def _local_cut(G: Graph, rng: random.Random) -> tuple[list[int], list[int]]:
    side = [rng.random() < 0.5 for _ in range(G.n)]
    improved = True
    while improved:
        improved = False
        for v in range(G.n):
            same = sum(1 for w in G.adj[v] if side[w] == side[v])
            if same > G.degree(v) - same:
                side[v] = not side[v]
                improved = True
    A = [v for v in range(G.n) if side[v]]
    B = [v for v in range(G.n) if not side[v]]
    if len(A) > len(B):
        A, B = B, A
    return A, B


def densify_or_clique(G: Graph, t: int, eps: float, c: float, rng_seed: int,
                      retries: int = 16):
    """One densification step: a denser 1-minor, a ``K_t`` 4-minor, or Failed."""
    if not (0 < eps < 1):
        raise ValueError("eps must lie in (0, 1)")
    if t < 1 or c <= 0:
        raise ValueError("need t >= 1 and c > 0")
    rng = random.Random(rng_seed)
    core = _peel(G, t, eps, c)
    if not core:
        return Failed("peel", {"n": G.n, "threshold": c * t ** 4 * max(G.n, 1) ** eps})
    H0, labels = induced_subgraph(G, core)
    n = H0.n
    A, B = _local_cut(H0, rng)
    # only edges across the cut (the bipartite subgraph) are used below
    p = n ** (-eps)
    need = c / 4 * t ** 4
    diag: dict = {"n": n, "A": len(A), "B": len(B)}
    for attempt in range(retries):
        Ap = [a for a in A if rng.random() < p]
        Apset = set(Ap)
        Bp = [v for v in B if sum(1 for w in H0.adj[v] if w in Apset) >= need]
        diag.update(attempt=attempt, A_prime=len(Ap), B_prime=len(Bp))
        if len(Ap) < n ** (1 - eps) and len(Bp) > n / 4:
            break
    else:
        return Failed("sample", diag)
    gp_adj: dict[int, set[int]] = {a: set() for a in Ap}
    tree_of: dict[int, list[tuple[int, int | None]]] = {a: [(a, None)] for a in Ap}
    witness: dict[tuple[int, int], tuple[int, int]] = {}
    for v in Bp:
        Nv = [w for w in H0.adj[v] if w in Apset]
        Nset = set(Nv)
        inner = {w: len(gp_adj[w] & Nset) for w in Nv}
        low = [w for w in Nv if inner[w] <= len(Nv) / 2 - 1]
        if low:
            w = min(low, key=lambda x: (inner[x], x))
            tree_of[w].append((v, w))
            for x in Nv:
                if x != w and x not in gp_adj[w]:
                    gp_adj[w].add(x)
                    gp_adj[x].add(w)
                    witness[(w, x)] = (v, x)
            continue
        # the neighbourhood of v is dense in G': look for K'_t around v
        order = Nv + [v]
        index = {x: i for i, x in enumerate(order)}
        h_edges = [(index[a], index[b]) for a in Nv for b in gp_adj[a] if b in Nset and a < b]
        h_edges += [(index[x], len(Nv)) for x in Nv]
        Hloc = Graph.from_edges(len(order), h_edges)
        h_trees = {index[x]: [(labels[y], None if p_ is None else labels[p_]) for y, p_ in tree_of[x]]
                   for x in Nv}
        h_trees[len(Nv)] = [(labels[v], None)]
        h_wit = {}
        for a, b in Hloc.edges():
            if b == len(Nv):
                h_wit[(a, b)] = (labels[order[a]], labels[v])
            else:
                x, y = order[a], order[b]
                u1, u2 = witness[(x, y)] if (x, y) in witness else tuple(reversed(witness[(y, x)]))
                h_wit[(a, b)] = (labels[u1], labels[u2])
        cert_h = MinorCertificate(1, h_trees, h_wit)
        try:
            cert_k = find_k1t(Hloc, t, None if t <= K1T_EXACT_LIMIT else DEFAULT_K1T_BUDGET)
        except RefusalError:
            cert_k = None
        diag.update(stop_vertex=labels[v], neighbourhood=len(Nv))
        if cert_k is None:
            return Failed("clique-search", diag)
        cert = compose_certificates(G, Hloc, complete_graph(t), cert_h, cert_k)
        return CliqueMinor(t, cert, diag)
    # every vertex of B' was absorbed: G' on A' is a 1-minor of G
    index = {a: i for i, a in enumerate(Ap)}
    gp = Graph.from_edges(len(Ap), [(index[a], index[b]) for a in Ap for b in gp_adj[a] if a < b])
    trees = {index[a]: [(labels[y], None if p_ is None else labels[p_]) for y, p_ in tree_of[a]]
             for a in Ap}
    wit = {}
    for i, j in gp.edges():
        a, b = Ap[i], Ap[j]
        if (a, b) in witness:
            u1, u2 = witness[(a, b)]
        else:
            u2, u1 = witness[(b, a)]
        wit[(i, j)] = (labels[u1], labels[u2])
    cert = MinorCertificate(1, trees, wit)
    target = c / 32 * t ** 4 * max(gp.n, 1) ** (1 + eps + eps ** 2)
    diag.update(edges=gp.m, target_edges=target, meets_target=gp.m >= target)
    return DenseMinor(gp, cert, diag)


def iterate_densify(G: Graph, t: int, eps: float, m: int, rng_seed: int,
                    c: float | None = None, retries: int = 16):
    """Up to ``m`` densification rounds with exact depth bookkeeping.

    Round ``i`` uses constant ``c / 32**(i-1)`` and exponent
    ``eps + (i-1) eps**2``.  The composed depth is tracked exactly; the
    diagnostics record whether it stays within ``4**m``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if c is None:
        c = 2 * 32 ** m
    seeds = random.Random(rng_seed)
    cur, acc = G, None
    history = []
    for i in range(1, m + 1):
        seed = rng_seed if i == 1 else seeds.randrange(2 ** 32)
        e_i = eps + (i - 1) * eps ** 2
        if not (0 < e_i < 1):
            return Failed("exponent", {"round": i, "eps": e_i, "history": history})
        out = densify_or_clique(cur, t, e_i, c / 32 ** (i - 1), seed, retries)
        history.append(out.kind)
        if isinstance(out, Failed):
            out.diagnostics.update(round=i, history=history)
            return out
        model = complete_graph(t) if isinstance(out, CliqueMinor) else out.graph
        cert = out.certificate if acc is None else compose_certificates(G, cur, model, acc, out.certificate)
        info = dict(out.diagnostics, round=i, history=history,
                    depth=cert.depth, within_power_bound=cert.depth <= 4 ** m)
        if isinstance(out, CliqueMinor):
            return CliqueMinor(t, cert, info)
        cur, acc = out.graph, cert
        last = DenseMinor(cur, cert, info)
    return last


@dataclass
class ShallowCliqueResult:
    m: int
    t: int
    d: int
    outcome: object


def shallow_clique(G: Graph, eps: float, rng_seed: int, c: float | None = None,
                   retries: int = 16) -> ShallowCliqueResult:
    """Look for ``K_t`` with ``t = floor(n**(eps/6))`` as a ``4**m``-minor, ``m = ceil(18/eps**2)``."""
    if not (0 < eps <= 1):
        raise ValueError("eps must lie in (0, 1]")
    m = _robust_ceil(18 / eps ** 2)
    t = math.floor(G.n ** (eps / 6) + 1e-12) if G.n else 0
    d = 4 ** m
    if t <= 1:
        cert = find_k1t(G, t)
        outcome = CliqueMinor(t, cert, {"trivial": True}) if cert is not None else Failed("empty")
        return ShallowCliqueResult(m, t, d, outcome)
    out = iterate_densify(G, t, eps / 6, m, rng_seed, c=c, retries=retries)
    if isinstance(out, DenseMinor):
        budget = None if t <= K1T_EXACT_LIMIT else DEFAULT_K1T_BUDGET
        try:
            cert_k = find_k1t(out.graph, t, budget)
        except RefusalError:
            cert_k = None
        if cert_k is None:
            out = Failed("final-clique-search", out.diagnostics)
        else:
            cert = compose_certificates(G, out.graph, complete_graph(t), out.certificate, cert_k)
            out = CliqueMinor(t, cert, dict(out.diagnostics, depth=cert.depth))
    return ShallowCliqueResult(m, t, d, out)


# -- parameter calculators ----------------------------------------------------

@dataclass(frozen=True)
class Iter3Params:
    eps: float
    m: int
    t: int
    in_regime: bool


def iter3_params(k: int, delta: float, mu: float, b: float) -> Iter3Params:
    """``eps = 1/(6 k**(1-delta) ln b)``, ``m = ceil(1/(2 eps**2))``, ``t = floor(e**(k**delta/6))``.

    ``in_regime`` reports whether ``t**mu >= 2 * 32**m``, the size the
    clique argument needs.
    """
    if not (2 / 3 < delta <= 1):
        raise ValueError("delta must lie in (2/3, 1]")
    if not (0 < mu <= 1):
        raise ValueError("mu must lie in (0, 1]")
    if b <= 1 or k < 1:
        raise ValueError("need b > 1 and k >= 1")
    eps = 1 / (6 * k ** (1 - delta) * math.log(b))
    m = _robust_ceil(1 / (2 * eps ** 2))
    t = math.floor(math.exp(k ** delta / 6) + 1e-12)
    in_regime = mu * math.log(t) >= math.log(2) + m * math.log(32) if t > 1 else False
    return Iter3Params(eps, m, t, in_regime)


def expansion_bound_from_witness(g: Callable, k: int):
    """``f(k) = 2 g(1/(4k + 4), k)``; ``g`` receives an exact Fraction."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return 2 * g(Fraction(1, 4 * k + 4), k)


def expansion_reference(k: int, gamma: float = 1.0) -> float:
    """``gamma * e**(k**(3/4))``, the subexponential reference curve."""
    return gamma * math.exp(k ** 0.75)
