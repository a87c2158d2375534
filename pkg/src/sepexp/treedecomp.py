"""Rooted tree decompositions with bounded vertex reuse.

The builder recurses on ``(H, Z)`` where ``Z`` is the root set that must sit
in the root bag, with ``b = 12(tw_budget + 1)`` and ``w = delta * b``:

1. ``|V(H)| <= w + b``: one bag with everything.
2. ``|Z| <= b``: grow ``Z`` to ``Z'`` of size ``b``, let ``Z''`` be the outside
   neighbours of ``Z'``, recurse on ``H - Z'`` with root set ``Z''`` under a
   parent bag ``Z' | Z''``.
3. otherwise split ``H`` with a ``Z``-balanced separator of size at most
   ``tw_budget + 1`` and recurse on both sides under a bag ``Z | S``.

Every bag has at most ``12(tw_budget + 1)(delta + 1)`` vertices and every
node at most two children.
"""
from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from typing import Callable

from .errors import BudgetExceededError
from .graph import Graph, induced_subgraph
from .separators import x_balanced_separator


@dataclass
class TreeDecomposition:
    parents: list[int | None]
    bags: list[tuple[int, ...]]
    root: int
    children: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.children:
            self.children = [[] for _ in self.parents]
            for node, p in enumerate(self.parents):
                if p is not None:
                    self.children[p].append(node)

    def __len__(self):
        return len(self.bags)

    def depths(self) -> list[int]:
        """Distance of every node from the root (-1 if unreachable)."""
        depth = [-1] * len(self.bags)
        if not self.bags:
            return depth
        depth[self.root] = 0
        stack = [self.root]
        while stack:
            u = stack.pop()
            for c in self.children[u]:
                if depth[c] < 0:
                    depth[c] = depth[u] + 1
                    stack.append(c)
        return depth

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_json(self) -> str:
        nodes = [{"parent": p, "bag": list(b)} for p, b in zip(self.parents, self.bags)]
        return json.dumps({"nodes": nodes, "root": self.root})

    @classmethod
    def from_json(cls, text: str) -> "TreeDecomposition":
        doc = json.loads(text)
        parents = [node["parent"] for node in doc["nodes"]]
        bags = [tuple(node["bag"]) for node in doc["nodes"]]
        return cls(parents, bags, doc["root"])


@dataclass(frozen=True)
class DecompositionReport:
    width: int
    max_vertex_level_span: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_decomposition(G: Graph, T: TreeDecomposition) -> DecompositionReport:
    violations = []
    N = len(T.bags)
    if N == 0:
        if G.n:
            violations.append("decomposition has no nodes")
        return DecompositionReport(-1, 0, tuple(violations))
    if not (0 <= T.root < N) or T.parents[T.root] is not None:
        violations.append("root is invalid or has a parent")
    for node, p in enumerate(T.parents):
        if node != T.root and (p is None or not (0 <= p < N)):
            violations.append(f"node {node} has invalid parent {p}")
    depth = T.depths()
    if any(d < 0 for d in depth):
        violations.append("tree is disconnected or cyclic")
    for node, kids in enumerate(T.children):
        if len(kids) > 2:
            violations.append(f"node {node} has {len(kids)} children")

    holders: list[list[int]] = [[] for _ in range(G.n)]
    for node, bag in enumerate(T.bags):
        for v in bag:
            if not (0 <= v < G.n):
                violations.append(f"bag {node} contains invalid vertex {v}")
            else:
                holders[v].append(node)
    for v in range(G.n):
        if not holders[v]:
            violations.append(f"vertex {v} not covered")
    bagsets = [set(b) for b in T.bags]
    for u, v in G.edges():
        if not any(v in bagsets[node] for node in holders[u]):
            violations.append(f"edge {u}-{v} not covered")
    span = 0
    for v in range(G.n):
        hs = holders[v]
        if not hs:
            continue
        # nodes holding v form a subtree iff exactly one of them has its
        # parent outside the set
        hset = set(hs)
        tops = [x for x in hs if T.parents[x] is None or T.parents[x] not in hset]
        if len(tops) != 1:
            violations.append(f"vertex {v} subtree disconnected")
        if all(depth[x] >= 0 for x in hs):
            span = max(span, len({depth[x] for x in hs}))
    return DecompositionReport(T.width(), span, tuple(violations))


def tw_budget_from_separators(c: float, psi: float, n: int) -> int:
    """Treewidth bound ``105 * c * n**psi`` rounded down (treewidth is integral)."""
    return math.floor(105 * c * n ** psi + 1e-9)


def span_bound(delta: int) -> float:
    """Levels a vertex may occupy: ``2 + 4 log2(delta + 1)``."""
    return 2 + 4 * math.log2(delta + 1)


class _Builder:
    def __init__(self, G, delta, tw_budget, separator):
        self.G = G
        self.b = 12 * (tw_budget + 1)
        self.w = delta * self.b
        self.sep_budget = tw_budget + 1
        self.separator = separator
        self.parents: list[int | None] = []
        self.bags: list[tuple[int, ...]] = []

    def node(self, bag, parent=None):
        self.parents.append(parent)
        self.bags.append(tuple(sorted(bag)))
        return len(self.bags) - 1

    def attach(self, child, parent):
        if child is not None:
            self.parents[child] = parent

    def build(self, H: frozenset, Z: frozenset, trail: tuple) -> int | None:
        if not H:
            return None
        G, b, w = self.G, self.b, self.w
        if len(H) <= w + b:
            return self.node(H)
        if len(Z) <= b:
            extra = sorted(H - Z)[: max(0, min(b, len(H)) - len(Z))]
            Zp = Z | frozenset(extra)
            rest = H - Zp
            Zpp = frozenset(u for v in Zp for u in G.adj[v] if u in rest)
            top = self.node(Zp | Zpp)
            self.attach(self.build(rest, Zpp, trail + ("case2",)), top)
            return top
        # case 3: |Z| > b, so delta >= 2 here (|Z| <= w)
        sub, labels = induced_subgraph(G, H)
        index = {v: i for i, v in enumerate(labels)}
        try:
            sep = self.separator(sub, [index[z] for z in Z], self.sep_budget)
        except BudgetExceededError as exc:
            raise BudgetExceededError(
                f"{exc} (subgraph of {len(H)} vertices, |Z| = {len(Z)}, "
                f"depth {len(trail)})", best_size=exc.best_size, context=trail) from exc
        A = frozenset(labels[i] for i in sep.side_a)
        B = frozenset(labels[i] for i in sep.side_b)
        S = A & B
        ZA = S | (Z - B)
        ZB = S | (Z - A)
        if len(ZA) >= len(Z) or len(ZB) >= len(Z):
            raise AssertionError("root set failed to shrink in case 3")
        top = self.node(Z | S)
        self.attach(self.build(A, ZA, trail + ("A",)), top)
        self.attach(self.build(B, ZB, trail + ("B",)), top)
        return top


def build_bounded_reuse_decomposition(
    G: Graph,
    delta: int,
    tw_budget: int,
    separator: Callable[[Graph, list[int], int], object] = x_balanced_separator,
) -> TreeDecomposition:
    """Bounded-reuse decomposition; ``delta`` must bound the maximum degree and
    ``tw_budget`` is the caller's treewidth bound (used for separator budgets).
    """
    if G.max_degree() > delta:
        raise ValueError(f"maximum degree {G.max_degree()} exceeds delta={delta}")
    if tw_budget < 0:
        raise ValueError("tw_budget must be nonnegative")
    builder = _Builder(G, delta, tw_budget, separator)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * G.n + 1000))
    try:
        root = builder.build(frozenset(range(G.n)), frozenset(), ())
    finally:
        sys.setrecursionlimit(old)
    if root is None:
        return TreeDecomposition([], [], 0)
    return TreeDecomposition(builder.parents, builder.bags, root)
