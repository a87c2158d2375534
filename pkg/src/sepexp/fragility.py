"""Fractional complementary packings.

A packing is a probability distribution over removal sets ``X``; it is
complementary for a witness class when every ``G - X`` in its support lies
in the class.  The only witness classes used here bound component size.
Thickness is the largest probability that a fixed vertex is removed.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Callable, Iterable, Mapping, Union

from .graph import (Graph, check_vertex_set, components, cube_index,
                    induced_subgraph, bfs_layers)
from .treedecomp import TreeDecomposition, build_bounded_reuse_decomposition, validate_decomposition

Weight = Union[Fraction, float]
VertexSet = tuple[int, ...]

FLOAT_TOL = 1e-9


def as_fraction(x) -> Fraction:
    """Exact value of ``x``; floats are snapped to the nearest small rational."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(float(x)).limit_denominator(10 ** 9)


def _robust_ceil(x: float) -> int:
    r = round(x)
    return r if abs(x - r) <= 1e-9 * max(1.0, abs(x)) else math.ceil(x)


class FractionalPacking:
    """Distribution over removal sets; duplicate sets are merged on creation."""

    def __init__(self, entries: Iterable[tuple[Iterable[int], Weight]], meta: dict | None = None):
        merged: dict[VertexSet, Weight] = {}
        for s, wt in entries:
            if wt < 0:
                raise ValueError("packing weights must be nonnegative")
            key = tuple(sorted(set(s)))
            merged[key] = merged.get(key, 0) + wt
        self.entries: tuple[tuple[VertexSet, Weight], ...] = tuple(merged.items())
        self.meta = dict(meta or {})
        total = sum(w for _, w in self.entries)
        if self.exact:
            if total != 1:
                raise ValueError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > FLOAT_TOL:
            raise ValueError(f"weights sum to {total}, not 1")

    @property
    def exact(self) -> bool:
        return all(isinstance(w, (int, Fraction)) for _, w in self.entries)

    @property
    def sets(self) -> list[VertexSet]:
        return [s for s, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def as_dict(self) -> dict[VertexSet, Weight]:
        return dict(self.entries)

    def __eq__(self, other):
        if not isinstance(other, FractionalPacking):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __repr__(self):
        return f"FractionalPacking({len(self.entries)} sets, meta={self.meta})"

    def to_json(self) -> str:
        entries = [{"set": list(s), "weight": str(w) if isinstance(w, Fraction) else w}
                   for s, w in self.entries]
        return json.dumps({"entries": entries, "meta": self.meta}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FractionalPacking":
        doc = json.loads(text)
        entries = []
        for e in doc["entries"]:
            w = e["weight"]
            entries.append((e["set"], Fraction(w) if isinstance(w, (str, int)) else float(w)))
        return cls(entries, doc.get("meta", {}))


def trivial_packing(meta: dict | None = None) -> FractionalPacking:
    """``pi(empty set) = 1``."""
    return FractionalPacking([((), Fraction(1))], meta)


@dataclass(frozen=True)
class WitnessClassSpec:
    """Graphs whose components all have at most ``bound`` vertices."""
    bound: int
    kind: str = "component-size-bound"

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("component bound must be at least 1")


def thickness(G: Graph, pi: FractionalPacking) -> Weight:
    load: dict[int, Weight] = {}
    for s, wt in pi.entries:
        check_vertex_set(G, s)
        for v in s:
            load[v] = load.get(v, 0) + wt
    if not load:
        return Fraction(0) if pi.exact else 0.0
    return max(load.values())


def max_residual_component(G: Graph, X: Iterable[int]) -> list[int]:
    comps = components(G, X)
    return max(comps, key=len) if comps else []


@dataclass(frozen=True)
class ComplementaryCheck:
    ok: bool
    set_index: int | None = None
    component: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


def validate_complementary(G: Graph, pi: FractionalPacking, w: WitnessClassSpec) -> ComplementaryCheck:
    """Every support set must leave components of at most ``w.bound`` vertices."""
    for i, (s, wt) in enumerate(pi.entries):
        if wt == 0:
            continue
        for comp in components(G, check_vertex_set(G, s)):
            if len(comp) > w.bound:
                return ComplementaryCheck(False, i, tuple(comp))
    return ComplementaryCheck(True)


def residual_bound(G: Graph, pi: FractionalPacking) -> int:
    """Largest component left by any support set."""
    return max((len(max_residual_component(G, s)) for s, wt in pi.entries if wt), default=0)


# -- explicit packings ----------------------------------------------------

def grid_packing(n: int, eps) -> FractionalPacking:
    """Uniform packing of ``R_n`` over the ``u = ceil(3/eps)`` residue sets.

    Set ``t`` holds every triple with a coordinate congruent to ``t`` mod ``u``;
    each residual component fits in a ``(u-1)^3`` box.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    e = as_fraction(eps)
    if not (0 < e <= 1):
        raise ValueError("eps must lie in (0, 1]")
    u = math.ceil(3 / e)
    meta = {"kind": "grid", "n": n, "eps": str(e), "u": u, "bound": (u - 1) ** 3}
    if n <= u - 1:
        return trivial_packing(meta)
    sets = []
    for t in range(u):
        s = [cube_index(n, i, j, k)
             for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1)
             if i % u == t or j % u == t or k % u == t]
        sets.append((s, Fraction(1, u)))
    return FractionalPacking(sets, meta)


def bfs_layer_packing(G: Graph, k: int) -> FractionalPacking:
    """Baker-style packing: set ``i`` holds vertices at BFS distance ``= i (mod k)``
    from the smallest vertex of their component.  Thickness is exactly ``1/k``
    (for nonempty graphs with ``k >= 1``)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    layers: list[list[int]] = [[] for _ in range(k)]
    for comp in components(G):
        for d, layer in enumerate(bfs_layers(G, comp[0], set(comp))):
            layers[d % k].extend(layer)
    return FractionalPacking([(s, Fraction(1, k)) for s in layers], {"kind": "bfs-layers", "k": k})


def restrict_packing(pi: FractionalPacking, labels: Iterable[int]) -> FractionalPacking:
    """Push a packing onto an induced subgraph whose vertex ``i`` is ``labels[i]``.
    Thickness cannot grow and residual components can only shrink."""
    index = {v: i for i, v in enumerate(labels)}
    entries = [([index[v] for v in s if v in index], wt) for s, wt in pi.entries]
    return FractionalPacking(entries, dict(pi.meta, restricted=True))


def layered_removal_sets(G: Graph, T: TreeDecomposition, k: int) -> list[VertexSet]:
    """``X_i``: union of the bags at tree depth congruent to ``i`` mod ``k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    report = validate_decomposition(G, T)
    if report.violations:
        raise ValueError(f"invalid decomposition: {report.violations[0]}")
    out: list[set[int]] = [set() for _ in range(k)]
    for bag, d in zip(T.bags, T.depths()):
        out[d % k].update(bag)
    return [tuple(sorted(s)) for s in out]


def compose_packings(
    G: Graph,
    pi1: FractionalPacking,
    inner: Mapping[VertexSet, FractionalPacking] | Callable[[VertexSet], FractionalPacking],
) -> FractionalPacking:
    """Two-stage distribution: draw ``X1`` from ``pi1``, then ``X2`` from the packing
    of ``G - X1`` (labelled as :func:`induced_subgraph` labels it), return ``X1 | X2``."""
    lookup = inner if callable(inner) else (lambda key: inner[key])
    entries = []
    for s1, w1 in pi1.entries:
        try:
            pi2 = lookup(s1)
        except KeyError:
            raise ValueError(f"no inner packing for support set {list(s1)}") from None
        removed = set(s1)
        _, labels = induced_subgraph(G, [v for v in range(G.n) if v not in removed])
        for s2, w2 in pi2.entries:
            entries.append((list(s1) + [labels[i] for i in s2], w1 * w2))
    return FractionalPacking(entries, {"kind": "composed"})


# -- the iterated construction -------------------------------------------

@dataclass(frozen=True)
class SplitConstants:
    c1: float
    c2: float
    c2prime: float
    c3: float
    c4: float
    c5: float
    b: float
    delta: float
    iota: float
    max_deg: int
    log_c5: float
    log_b: float

    def __post_init__(self):
        if not self.c3 > 1:
            raise ValueError("c3 must exceed 1")
        if not self.log_b > 0:
            raise ValueError("b must exceed 1")

    def log_component_bound(self, eps) -> float:
        """Natural log of ``b ** (1/eps)``."""
        return self.log_b / float(eps)


def _exp(x: float) -> float:
    return math.exp(x) if x < 709 else math.inf


def split_constants(c: float, delta: float, iota: float, max_deg: int,
                    span_term: float | None = None, c1: float | None = None) -> SplitConstants:
    """Constants of the iterated construction (natural logarithms).

    ``span_term`` defaults to ``2 + 4 ln(max_deg + 1)``, the number of layered
    sets a vertex may fall into; ``c1`` defaults to ``105 c``.  Overriding them
    gives desk-scale profiles with the same algebra.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if not (0 <= delta < 1) or iota <= 0 or delta + iota >= 1:
        raise ValueError("need 0 <= delta < 1, iota > 0 and delta + iota < 1")
    if span_term is None:
        span_term = 2 + 4 * math.log(max_deg + 1)
    c1 = 105 * c if c1 is None else c1
    c2 = 24 * (c1 + 1) * (max_deg + 1)
    ratio = delta + iota
    log_c2prime = math.log(c2) / (1 - ratio)
    c3 = 1 / ratio
    c4 = span_term / ((c3 - 1) * iota)
    log_c5 = c3 * c4
    log_b = log_c2prime + log_c5
    return SplitConstants(c1=c1, c2=c2, c2prime=_exp(log_c2prime), c3=c3, c4=c4,
                          c5=_exp(log_c5), b=_exp(log_b), delta=delta, iota=iota,
                          max_deg=max_deg, log_c5=log_c5, log_b=log_b)


@dataclass(frozen=True)
class Round:
    n_bound: float
    k: int
    tw_budget: int


@dataclass
class IteratedPacking:
    packing: FractionalPacking
    component_bound: int
    t: int
    rounds: list[Round] = field(default_factory=list)
    log_target_bound: float = math.inf

    @property
    def target_bound(self) -> float:
        return _exp(self.log_target_bound)


class SupportBudgetError(RuntimeError):
    pass


def _rounds(n: int, eps: float, consts: SplitConstants) -> list[Round]:
    logn = math.log(n)
    t = 0
    while consts.c4 * consts.c3 ** (t + 1) / logn <= eps * (1 + 1e-12):
        t += 1
    out = []
    ni = float(n)
    for _ in range(t):
        k = max(1, _robust_ceil(consts.iota * math.log(ni)))
        tw = math.floor(consts.c1 * ni ** consts.delta + 1e-9)
        out.append(Round(ni, k, tw))
        ni = consts.c2 * ni ** (consts.delta + consts.iota)
    return out


def _component_choices(G: Graph, comp: list[int], rnd: Round, delta: int) -> list[VertexSet]:
    H, labels = induced_subgraph(G, comp)
    T = build_bounded_reuse_decomposition(H, max(delta, H.max_degree()), rnd.tw_budget)
    return [tuple(labels[i] for i in s) for s in layered_removal_sets(H, T, rnd.k)]


def iterated_vs_packing(G: Graph, eps, consts: SplitConstants, mode: str = "enumerate",
                        sample_count: int = 200, rng_seed: int = 0,
                        support_budget: int = 4096) -> IteratedPacking:
    """Packing whose support leaves components of at most ``b ** (1/eps)`` vertices.

    If ``ln n < c4/eps`` the graph already qualifies and the trivial packing is
    returned.  Otherwise ``t`` rounds are run (``t`` largest with
    ``c4 c3^t / ln n <= eps``); in round ``i`` every component is decomposed,
    cut into ``k_i = ceil(iota ln n_i)`` layered sets, and one of them is drawn
    uniformly, independently per component.  ``mode="enumerate"`` returns the
    exact product distribution, ``mode="sample"`` returns ``sample_count``
    equally weighted draws.
    """
    e = float(eps)
    if not (0 < e <= 1):
        raise ValueError("eps must lie in (0, 1]")
    if G.n == 0:
        raise ValueError("graph must be nonempty")
    if mode not in ("enumerate", "sample"):
        raise ValueError(f"unknown mode {mode!r}")
    log_target = consts.log_component_bound(e)
    meta = {"mode": mode, "eps": e, "seed": rng_seed if mode == "sample" else None}
    if math.log(G.n) < consts.c4 / e:
        pi = trivial_packing(dict(meta, bound=len(max_residual_component(G, ()))))
        return IteratedPacking(pi, pi.meta["bound"], 0, [], log_target)

    rounds = _rounds(G.n, e, consts)
    cache: dict[tuple[int, tuple[int, ...]], list[VertexSet]] = {}

    def choices(i: int, comp: list[int]) -> list[VertexSet]:
        key = (i, tuple(comp))
        if key not in cache:
            cache[key] = _component_choices(G, comp, rounds[i], consts.max_deg)
        return cache[key]

    if mode == "enumerate":
        states: dict[frozenset, Fraction] = {frozenset(): Fraction(1)}
        for i in range(len(rounds)):
            nxt: dict[frozenset, Fraction] = {}
            for removed, wt in states.items():
                partial = {removed: wt}
                for comp in components(G, removed):
                    opts = choices(i, comp)
                    dist: dict[VertexSet, Fraction] = {}
                    for s in opts:
                        dist[s] = dist.get(s, 0) + Fraction(1, len(opts))
                    grown: dict[frozenset, Fraction] = {}
                    for base, bw in partial.items():
                        for s, sw in dist.items():
                            key = base | frozenset(s)
                            grown[key] = grown.get(key, 0) + bw * sw
                    partial = grown
                    if len(partial) > support_budget:
                        raise SupportBudgetError(
                            f"support exceeds {support_budget} sets; use mode='sample'")
                for key, w in partial.items():
                    nxt[key] = nxt.get(key, 0) + w
                if len(nxt) > support_budget:
                    raise SupportBudgetError(
                        f"support exceeds {support_budget} sets; use mode='sample'")
            states = nxt
        entries = [(sorted(s), w) for s, w in states.items()]
    else:
        rng = random.Random(rng_seed)
        entries = []
        for _ in range(sample_count):
            removed: set[int] = set()
            for i in range(len(rounds)):
                for comp in components(G, removed):
                    opts = choices(i, comp)
                    removed.update(opts[rng.randrange(len(opts))])
            entries.append((sorted(removed), 1.0 / sample_count))
    pi = FractionalPacking(entries, meta)
    bound = residual_bound(G, pi)
    pi.meta["bound"] = bound
    return IteratedPacking(pi, bound, len(rounds), rounds, log_target)
