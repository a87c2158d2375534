"""Simple undirected graphs on vertices ``0..n-1`` plus generators and the
edge-list interchange format.

Edge-list format::

    # comment lines start with '#'
    n m
    u v
    ...

Vertices are 0-indexed.  The strong product cube ``R_n`` flattens the triple
``(i, j, k)`` (1-indexed, ``1 <= i, j, k <= n``) to
``(i-1)*n*n + (j-1)*n + (k-1)``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ParseError


class Graph:
    """Immutable simple undirected graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "m", "_adjsets")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        self.n = n
        self.adj = tuple(tuple(a) for a in adj)
        self.m = sum(len(a) for a in self.adj) // 2
        self._adjsets = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, [sorted(s) for s in nbrs])

    @property
    def adjsets(self) -> tuple[frozenset, ...]:
        if self._adjsets is None:
            self._adjsets = tuple(frozenset(a) for a in self.adj)
        return self._adjsets

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjsets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def check_vertex_set(G: Graph, S: Iterable[int]) -> tuple[int, ...]:
    """Return ``S`` as a strictly increasing tuple, validating every id."""
    out = tuple(sorted(set(S)))
    for v in out:
        if not (isinstance(v, int) and 0 <= v < G.n):
            raise ValueError(f"invalid vertex id {v!r} for graph on {G.n} vertices")
    return out


# -- interchange ----------------------------------------------------------

def parse_edge_list(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges = []
    expected = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("negative count in header", lineno)
            header = (a, b)
            expected = b
            continue
        if len(edges) >= expected:
            raise ParseError(f"more than {expected} edge lines", lineno)
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
        if a == b:
            raise ParseError(f"loop edge at vertex {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header")
    if len(edges) != expected:
        raise ParseError(f"header announces {expected} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def write_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines)


# -- generators -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, [() for _ in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def grid_graph(rows: int, cols: int) -> Graph:
    """The planar ``rows x cols`` grid; vertex ``(r, c)`` is ``r*cols + c``."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for H in graphs:
        edges.extend((u + offset, v + offset) for u, v in H.edges())
        offset += H.n
    return Graph.from_edges(offset, edges)


def cube_index(n: int, i: int, j: int, k: int) -> int:
    """Flatten the 1-indexed triple ``(i, j, k)`` of ``R_n``."""
    return (i - 1) * n * n + (j - 1) * n + (k - 1)


def cube_coords(n: int, v: int) -> tuple[int, int, int]:
    return v // (n * n) + 1, (v // n) % n + 1, v % n + 1


def strong_product_cube(n: int) -> Graph:
    """``R_n``: strong product of three paths on ``n`` vertices."""
    if n < 1:
        raise ValueError("n must be at least 1")
    steps = [d for d in itertools.product((-1, 0, 1), repeat=3) if d != (0, 0, 0)]
    adj = []
    for v in range(n ** 3):
        i, j, k = cube_coords(n, v)
        nb = []
        for di, dj, dk in steps:
            a, b, c = i + di, j + dj, k + dk
            if 1 <= a <= n and 1 <= b <= n and 1 <= c <= n:
                nb.append(cube_index(n, a, b, c))
        adj.append(sorted(nb))
    return Graph(n ** 3, adj)


def subdivide_edges(G: Graph, reps: int | Mapping[tuple[int, int], int]) -> Graph:
    """Replace each edge ``uv`` by a path with ``reps[uv]`` internal vertices.

    New vertices are numbered from ``G.n`` upward, edge by edge in the order
    of ``G.edges()``, and along each path from the smaller endpoint.
    """
    if isinstance(reps, int):
        if reps < 0:
            raise ValueError("subdivision count must be nonnegative")
        counts = {e: reps for e in G.edges()}
    else:
        counts = {}
        for (u, v), r in reps.items():
            a, b = min(u, v), max(u, v)
            if not (0 <= a < G.n and 0 <= b < G.n) or not G.has_edge(a, b):
                raise ValueError(f"({u}, {v}) is not an edge of the graph")
            if r < 0:
                raise ValueError("subdivision count must be nonnegative")
            counts[(a, b)] = r
    edges = []
    nxt = G.n
    for u, v in G.edges():
        r = counts.get((u, v), 0)
        chain = [u] + list(range(nxt, nxt + r)) + [v]
        nxt += r
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)


def k1t_graph(t: int) -> Graph:
    """``K'_t``: the clique ``K_t`` with every edge subdivided once."""
    return subdivide_edges(complete_graph(t), 1)


# -- structure ------------------------------------------------------------

def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(H, labels)`` where ``labels[i]`` is the ``G``-vertex of ``H``-vertex ``i``."""
    labels = check_vertex_set(G, S)
    index = {v: i for i, v in enumerate(labels)}
    adj = [[index[w] for w in G.adj[v] if w in index] for v in labels]
    return Graph(len(labels), adj), labels


def components(G: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``G - removed`` as sorted vertex lists,
    ordered by smallest vertex."""
    seen = bytearray(G.n)
    for v in removed:
        seen[v] = 1
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def bfs_layers(G: Graph, source: int, allowed: set[int] | None = None) -> list[list[int]]:
    """Distance layers from ``source`` inside ``allowed`` (all vertices if None)."""
    dist = {source: 0}
    layers = [[source]]
    while True:
        nxt = []
        for u in layers[-1]:
            for w in G.adj[u]:
                if w not in dist and (allowed is None or w in allowed):
                    dist[w] = len(layers)
                    nxt.append(w)
        if not nxt:
            return layers
        layers.append(sorted(nxt))


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    component_sizes: tuple[int, ...]


def graph_stats(G: Graph) -> GraphStats:
    sizes = sorted((len(c) for c in components(G)), reverse=True)
    return GraphStats(G.n, G.m, G.max_degree(), tuple(sizes))
