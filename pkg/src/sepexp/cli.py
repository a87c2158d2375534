"""Command line interface.

Exit codes: 0 success, 2 argument or input error, 3 refusal (an exact
routine declined an instance outside its limits, or a budget ran out).
Errors are reported as one JSON object on stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from fractions import Fraction

from . import approx, expanders, fragility, minors, separators, treedecomp
from .errors import BudgetExceededError, ParseError, RefusalError
from .graph import (Graph, k1t_graph, parse_edge_list, strong_product_cube,
                    subdivide_edges, write_edge_list)


class ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def number(text: str) -> Fraction:
    """Exact rational from ``"1/3"``, ``"0.5"`` or ``"2"``."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _emit(text: str, path: str | None):
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True)


def _num(x):
    """JSON-friendly number: exact rationals as strings, everything else as is."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


# -- commands -------------------------------------------------------------

def cmd_gen(a):
    if a.kind == "grid3":
        G = strong_product_cube(a.n)
    elif a.kind == "regular":
        G = expanders.random_regular(a.n, a.d, a.seed)
    elif a.kind == "subdivide":
        G = subdivide_edges(_read_graph(a.input), a.reps)
    else:
        G = k1t_graph(a.t)
    _emit(write_edge_list(G), a.output)


def _sep_doc(sep):
    return {"side_a": list(sep.side_a), "side_b": list(sep.side_b), "size": sep.size,
            "balanced": sep.balanced, "separator": list(sep.separator)}


def cmd_separate(a):
    G = _read_graph(a.input)
    if a.kind == "exact":
        sep = separators.exact_min_balanced_separation(G, n_limit=a.limit, method=a.method)
    else:
        sep = separators.heuristic_balanced_separation(G)
    _emit(_dumps(_sep_doc(sep)), a.output)


def _decomposition(G, a):
    delta = G.max_degree() if a.delta is None else a.delta
    return treedecomp.build_bounded_reuse_decomposition(G, delta, a.tw_budget)


def cmd_decompose(a):
    G = _read_graph(a.input)
    T = _decomposition(G, a)
    rep = treedecomp.validate_decomposition(G, T)
    doc = json.loads(T.to_json())
    doc["report"] = {"width": rep.width, "max_vertex_level_span": rep.max_vertex_level_span,
                     "violations": list(rep.violations)}
    _emit(_dumps(doc), a.output)


def _packing_doc(G, pi):
    doc = json.loads(pi.to_json())
    th = fragility.thickness(G, pi)
    doc["thickness"] = float(th)
    doc["thickness_exact"] = str(th) if isinstance(th, Fraction) else None
    doc["bound"] = fragility.residual_bound(G, pi)
    return doc


def cmd_pack(a):
    if a.kind == "grid":
        G = strong_product_cube(a.n)
        pi = fragility.grid_packing(a.n, a.eps)
    elif a.kind == "layered":
        G = _read_graph(a.input)
        T = _decomposition(G, a)
        sets = fragility.layered_removal_sets(G, T, a.k)
        pi = fragility.FractionalPacking([(s, Fraction(1, a.k)) for s in sets],
                                         {"kind": "layered", "k": a.k})
    else:
        G = _read_graph(a.input)
        if a.mode == "sample" and a.seed is None:
            raise ArgumentError("sample mode requires --seed")
        consts = fragility.split_constants(float(a.c), float(a.delta), float(a.iota),
                                           a.max_deg if a.max_deg is not None else G.max_degree(),
                                           span_term=a.span_term, c1=a.c1)
        res = fragility.iterated_vs_packing(G, a.eps, consts, mode=a.mode,
                                            sample_count=a.samples, rng_seed=a.seed or 0,
                                            support_budget=a.support_budget)
        pi = res.packing
    _emit(_dumps(_packing_doc(G, pi)), a.output)


def _load_packing(path):
    with open(path, encoding="utf-8") as fh:
        return fragility.FractionalPacking.from_json(fh.read())


def cmd_ptas(a):
    G = _read_graph(a.input)
    pi = _load_packing(a.packing) if a.packing else \
        fragility.bfs_layer_packing(G, max(1, math.ceil(1 / a.eps)))
    bound = a.bound if a.bound is not None else max(1, fragility.residual_bound(G, pi))
    res = approx.ptas_independent_set(G, a.eps, pi, fragility.WitnessClassSpec(bound))
    _emit(_dumps({"vertices": list(res.vertices), "size": res.size,
                  "support_index": res.support_index}), a.output)


def cmd_subgraph(a):
    G = _read_graph(a.input)
    H = _read_graph(a.pattern)
    pi = _load_packing(a.packing) if a.packing else fragility.bfs_layer_packing(G, H.n + 1)
    bound = a.bound if a.bound is not None else max(1, fragility.residual_bound(G, pi))
    found = approx.subgraph_test(G, H, pi, fragility.WitnessClassSpec(bound))
    _emit(_dumps({"contains": found}), a.output)


def cmd_nabla(a):
    G = _read_graph(a.input)
    fn = minors.nabla_brute if a.kind == "brute" else minors.nabla_greedy
    _emit(fn(G, a.k).to_json(), a.output)


def outcome_doc(out) -> dict:
    doc = {"kind": out.kind, "diagnostics": out.diagnostics}
    if isinstance(out, minors.Failed):
        doc["stage"] = out.stage
    else:
        doc["certificate"] = json.loads(out.certificate.to_json())
    if isinstance(out, minors.DenseMinor):
        doc["model"] = {"n": out.graph.n, "edges": [list(e) for e in out.graph.edges()]}
    if isinstance(out, minors.CliqueMinor):
        doc["t"] = out.t
    return doc


def cmd_densify(a):
    G = _read_graph(a.input)
    if a.rounds == 1:
        out = minors.densify_or_clique(G, a.t, float(a.eps), float(a.c), a.seed, a.retries)
    else:
        out = minors.iterate_densify(G, a.t, float(a.eps), a.rounds, a.seed,
                                     c=float(a.c), retries=a.retries)
    _emit(_dumps(outcome_doc(out)), a.output)


def cmd_shallow(a):
    G = _read_graph(a.input)
    res = minors.shallow_clique(G, float(a.eps), a.seed,
                                c=None if a.c is None else float(a.c), retries=a.retries)
    _emit(_dumps({"m": res.m, "t": res.t, "d": str(res.d), "outcome": outcome_doc(res.outcome)}),
          a.output)


def cmd_params(a):
    if a.kind == "split-constants":
        consts = fragility.split_constants(float(a.c), float(a.delta), float(a.iota), a.max_deg,
                                           span_term=a.span_term, c1=a.c1)
        doc = asdict(consts)
    elif a.kind == "iter3":
        doc = asdict(minors.iter3_params(a.k, float(a.delta), float(a.mu), float(a.b)))
    else:
        const, power = a.g_const, a.g_power

        def g(eps, k):
            return const * (1 / eps) ** power

        doc = {"k": a.k, "f": _num(minors.expansion_bound_from_witness(g, a.k)),
               "g_const": _num(const), "g_power": power}
    _emit(_dumps(doc), a.output)


def cmd_expander(a):
    rep = expanders.expander_separator_experiment(a.n, a.m, a.seed)
    if a.format == "json":
        _emit(rep.to_json(), a.output)
    else:
        _emit(expanders.CSV_HEADER + "\n" + rep.csv_row(), a.output)


def cmd_profile(a):
    G = _read_graph(a.input)
    fn = minors.nabla_brute if a.method == "brute" else minors.nabla_greedy
    rows = ["k,nabla,reference"]
    for k in range(a.K + 1):
        rows.append(f"{k},{float(fn(G, k).density)!r},{minors.expansion_reference(k, a.gamma)!r}")
    _emit("\n".join(rows), a.output)


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sepexp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(func=fn)
        sp.add_argument("-o", "--output", default=None, help="output path (default stdout)")
        return sp

    def kinds(parent_name, fn, choices):
        sp = sub.add_parser(parent_name)
        inner = sp.add_subparsers(dest="kind", required=True, parser_class=_Parser)
        out = {}
        for c in choices:
            q = inner.add_parser(c)
            q.set_defaults(func=fn)
            q.add_argument("-o", "--output", default=None)
            out[c] = q
        return out

    g = kinds("gen", cmd_gen, ["grid3", "regular", "subdivide", "k1t"])
    g["grid3"].add_argument("--n", type=int, required=True)
    g["regular"].add_argument("--n", type=int, required=True)
    g["regular"].add_argument("--d", type=int, default=3)
    g["regular"].add_argument("--seed", type=int, required=True)
    g["subdivide"].add_argument("--input", required=True)
    g["subdivide"].add_argument("--reps", type=int, required=True)
    g["k1t"].add_argument("--t", type=int, required=True)

    s = kinds("separate", cmd_separate, ["exact", "heuristic"])
    for q in s.values():
        q.add_argument("--input", required=True)
    s["exact"].add_argument("--limit", type=int, default=separators.EXACT_LIMIT)
    s["exact"].add_argument("--method", choices=["enumerate", "milp"], default="enumerate")

    def decomposition_args(q):
        q.add_argument("--tw-budget", type=int, required=True)
        q.add_argument("--delta", type=int, default=None, help="degree bound (default: max degree)")

    d = cmd("decompose", cmd_decompose)
    d.add_argument("--input", required=True)
    decomposition_args(d)

    k = kinds("pack", cmd_pack, ["grid", "layered", "iterated"])
    k["grid"].add_argument("--n", type=int, required=True)
    k["grid"].add_argument("--eps", type=number, required=True)
    k["layered"].add_argument("--input", required=True)
    k["layered"].add_argument("--k", type=int, required=True)
    decomposition_args(k["layered"])
    it = k["iterated"]
    it.add_argument("--input", required=True)
    it.add_argument("--eps", type=number, required=True)
    it.add_argument("--c", type=number, default=Fraction(1))
    it.add_argument("--delta", type=number, required=True)
    it.add_argument("--iota", type=number, required=True)
    it.add_argument("--max-deg", type=int, default=None)
    it.add_argument("--span-term", type=float, default=None)
    it.add_argument("--c1", type=float, default=None)
    it.add_argument("--mode", choices=["enumerate", "sample"], default="enumerate")
    it.add_argument("--samples", type=int, default=200)
    it.add_argument("--support-budget", type=int, default=4096)
    it.add_argument("--seed", type=int, default=None)

    q = cmd("ptas", cmd_ptas)
    q.add_argument("--input", required=True)
    q.add_argument("--eps", type=number, required=True)
    q.add_argument("--packing", default=None, help="packing JSON (default: BFS layers)")
    q.add_argument("--bound", type=int, default=None)

    q = cmd("subgraph", cmd_subgraph)
    q.add_argument("--input", required=True)
    q.add_argument("--pattern", required=True)
    q.add_argument("--packing", default=None)
    q.add_argument("--bound", type=int, default=None)

    nb = kinds("nabla", cmd_nabla, ["brute", "greedy"])
    for q in nb.values():
        q.add_argument("--input", required=True)
        q.add_argument("--k", type=int, required=True)

    q = cmd("densify", cmd_densify)
    q.add_argument("--input", required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--eps", type=number, required=True)
    q.add_argument("--c", type=number, default=Fraction(64))
    q.add_argument("--rounds", type=int, default=1)
    q.add_argument("--retries", type=int, default=16)
    q.add_argument("--seed", type=int, required=True)

    q = cmd("shallow-clique", cmd_shallow)
    q.add_argument("--input", required=True)
    q.add_argument("--eps", type=number, required=True)
    q.add_argument("--c", type=number, default=None)
    q.add_argument("--retries", type=int, default=16)
    q.add_argument("--seed", type=int, required=True)

    pr = kinds("params", cmd_params, ["split-constants", "iter3", "expansion-bound"])
    sc = pr["split-constants"]
    sc.add_argument("--c", type=number, required=True)
    sc.add_argument("--delta", type=number, required=True)
    sc.add_argument("--iota", type=number, required=True)
    sc.add_argument("--max-deg", type=int, required=True)
    sc.add_argument("--span-term", type=float, default=None)
    sc.add_argument("--c1", type=float, default=None)
    i3 = pr["iter3"]
    i3.add_argument("--k", type=int, required=True)
    i3.add_argument("--delta", type=number, required=True)
    i3.add_argument("--mu", type=number, default=Fraction(1))
    i3.add_argument("--b", type=number, default=Fraction(math.e))
    eb = pr["expansion-bound"]
    eb.add_argument("--k", type=int, required=True)
    eb.add_argument("--g-const", type=number, default=Fraction(1), help="g(eps, k) = C * eps**-P")
    eb.add_argument("--g-power", type=int, default=0)

    q = cmd("expander-verify", cmd_expander)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--format", choices=["csv", "json"], default="csv")

    q = cmd("profile", cmd_profile)
    q.add_argument("--input", required=True)
    q.add_argument("--K", type=int, required=True)
    q.add_argument("--method", choices=["greedy", "brute"], default="greedy")
    q.add_argument("--gamma", type=float, default=1.0)
    return p


def _fail(code: int, kind: str, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except (ArgumentError, ParseError, ValueError, OSError) as exc:
        return _fail(2, "argument", exc)
    except (RefusalError, BudgetExceededError, fragility.SupportBudgetError) as exc:
        return _fail(3, "refusal", exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
