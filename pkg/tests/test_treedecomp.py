import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from sepexp.errors import BudgetExceededError
from sepexp.graph import (complete_graph, cycle_graph, grid_graph, path_graph,
                          strong_product_cube)
from sepexp.treedecomp import (TreeDecomposition, build_bounded_reuse_decomposition,
                               span_bound, tw_budget_from_separators, validate_decomposition)

from helpers import random_subcubic_tree, shuffled


def independent_check(G, T):
    """Decomposition axioms checked through networkx."""
    tree = nx.Graph()
    tree.add_nodes_from(range(len(T.bags)))
    tree.add_edges_from((c, p) for c, p in enumerate(T.parents) if p is not None)
    assert len(T.bags) == 0 or nx.is_tree(tree)
    for v in range(G.n):
        holders = [i for i, b in enumerate(T.bags) if v in b]
        assert holders and nx.is_connected(tree.subgraph(holders))
    for u, v in G.edges():
        assert any(u in b and v in b for b in T.bags)
    assert all(len(T.children[i]) <= 2 for i in range(len(T.bags)))


def test_validator_examples():
    K3 = complete_graph(3)
    rep = validate_decomposition(K3, TreeDecomposition([None], [(0, 1, 2)], 0))
    assert (rep.width, rep.max_vertex_level_span, rep.ok) == (2, 1, True)
    P3 = path_graph(3)
    rep = validate_decomposition(P3, TreeDecomposition([None, 0], [(0, 1), (1, 2)], 0))
    assert rep.width == 1 and rep.max_vertex_level_span <= 2 and rep.ok
    rep = validate_decomposition(P3, TreeDecomposition([None, 0], [(0, 1), (2,)], 0))
    assert any("edge 1-2 not covered" in v for v in rep.violations)


def test_validator_catches_broken_subtree_and_branching():
    P3 = path_graph(3)
    T = TreeDecomposition([None, 0, 1], [(0, 1), (1, 2), (0,)], 0)
    assert any("vertex 0 subtree disconnected" in v for v in validate_decomposition(P3, T).violations)
    T = TreeDecomposition([None, 0, 0, 0], [(0, 1, 2)] * 4, 0)
    assert any("3 children" in v for v in validate_decomposition(P3, T).violations)


def test_single_bag_cases():
    T = build_bounded_reuse_decomposition(complete_graph(1), 0, 0)
    assert T.bags == [(0,)]
    T = build_bounded_reuse_decomposition(path_graph(20), 2, 1)
    assert len(T.bags) == 1
    R = strong_product_cube(4)
    T = build_bounded_reuse_decomposition(R, 26, 1)
    assert validate_decomposition(R, T).ok


def _families():
    rng = random.Random(11)
    yield "path", shuffled(path_graph(600), 1), 2
    yield "cycle", shuffled(cycle_graph(600), 2), 2
    yield "grid", shuffled(grid_graph(6, 100), 3), 4
    yield "tree", shuffled(random_subcubic_tree(800, rng), 5), 3


@pytest.mark.parametrize("name, G, delta", list(_families()), ids=lambda x: x if isinstance(x, str) else "")
def test_recursive_cases_produce_valid_decompositions(name, G, delta):
    # separator budgets; tight for the tree and grid, below the true width for path and cycle
    tw = {"path": 0, "cycle": 1, "tree": 1, "grid": 6}[name]
    T = build_bounded_reuse_decomposition(G, delta, tw)
    rep = validate_decomposition(G, T)
    assert rep.ok, rep.violations[:3]
    independent_check(G, T)
    assert max(len(b) for b in T.bags) <= 12 * (tw + 1) * (delta + 1)
    assert rep.max_vertex_level_span <= span_bound(delta)
    # both recursive cases were exercised
    assert len(T.bags) > 1
    assert any(len(c) == 2 for c in T.children)


def test_budget_failure_carries_context():
    def stingy(sub, X, budget):
        raise BudgetExceededError("nope", best_size=7)

    G = shuffled(path_graph(400), 0)
    with pytest.raises(BudgetExceededError) as err:
        build_bounded_reuse_decomposition(G, 2, 0, separator=stingy)
    assert err.value.best_size == 7
    assert err.value.context and "case2" in err.value.context


@given(st.integers(30, 250), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_paths_always_valid(n, seed):
    G = shuffled(path_graph(n), seed)
    T = build_bounded_reuse_decomposition(G, 2, 0)
    rep = validate_decomposition(G, T)
    assert rep.ok and rep.max_vertex_level_span <= span_bound(2)


def test_json_round_trip():
    G = shuffled(cycle_graph(200), 4)
    T = build_bounded_reuse_decomposition(G, 2, 0)
    assert TreeDecomposition.from_json(T.to_json()) == T


def test_degree_precondition():
    with pytest.raises(ValueError):
        build_bounded_reuse_decomposition(complete_graph(4), 2, 0)


def test_formulas():
    assert tw_budget_from_separators(1, 0.5, 100) == 1050
    assert tw_budget_from_separators(2, 0, 7) == 210
    assert span_bound(1) == 6
    assert span_bound(3) == 10
