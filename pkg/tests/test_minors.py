import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sepexp.errors import RefusalError
from sepexp.graph import (Graph, complete_graph, cycle_graph, empty_graph, induced_subgraph,
                          k1t_graph, path_graph, petersen_graph)
from sepexp.minors import (CliqueMinor, DenseMinor, Failed, MinorCertificate, composed_depth,
                           compose_certificates, densify_or_clique, expansion_bound_from_witness,
                           find_k1t, identity_certificate, iter3_params, iterate_densify,
                           nabla_brute, nabla_greedy, shallow_clique, verify_certificate)

from helpers import contains_oracle, gnp, graphs


def halving(N):
    """``C_N`` onto ``C_{N/2}`` by contracting the edges {2i, 2i+1}."""
    trees = {i: [(2 * i, None), (2 * i + 1, 2 * i)] for i in range(N // 2)}
    wit = {(i, i + 1): (2 * i + 1, 2 * i + 2) for i in range(N // 2 - 1)}
    wit[(0, N // 2 - 1)] = (0, N - 1)
    return MinorCertificate(1, trees, wit)


def test_verify_examples():
    G = petersen_graph()
    assert verify_certificate(G, G, identity_certificate(G))
    assert verify_certificate(cycle_graph(6), cycle_graph(3), halving(6))
    bad = halving(6)
    bad.trees[1] = [(1, None), (3, 1)]
    check = verify_certificate(cycle_graph(6), cycle_graph(3), bad)
    assert not check and "trees not disjoint" in check.violations


def test_verify_catches_depth_and_witness_problems():
    C6, C3 = cycle_graph(6), cycle_graph(3)
    shallow = halving(6)
    shallow.depth = 0
    assert any("depth 1 > 0" in v for v in verify_certificate(C6, C3, shallow).violations)
    wrong = halving(6)
    wrong.witness_edges[(0, 1)] = (0, 1)
    assert not verify_certificate(C6, C3, wrong)
    missing = halving(6)
    del missing.witness_edges[(1, 2)]
    assert any("missing witness" in v for v in verify_certificate(C6, C3, missing).violations)


def test_compose_examples():
    C12, C6, C3 = cycle_graph(12), cycle_graph(6), cycle_graph(3)
    cert = compose_certificates(C12, C6, C3, halving(12), halving(6))
    assert cert.depth == composed_depth(1, 1) == 4
    assert verify_certificate(C12, C3, cert)
    assert cert.measured_depth() <= 4
    G = petersen_graph()
    lifted = compose_certificates(G, G, G, identity_certificate(G), identity_certificate(G))
    assert lifted.depth == 0 and verify_certificate(G, G, lifted)
    assert composed_depth(0, 3) == 3
    with pytest.raises(ValueError):
        compose_certificates(C12, C6, C3, halving(6), halving(6))


@given(graphs(min_n=1, max_n=8), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=40, deadline=None)
def test_composition_depth_measured(G, k1, k2):
    first = nabla_brute(G, k1)
    second = nabla_greedy(first.model, k2)
    cert = compose_certificates(G, first.model, second.model, first.certificate, second.certificate)
    assert verify_certificate(G, second.model, cert)
    assert cert.measured_depth() <= composed_depth(k1, k2)


def test_certificate_json_round_trip():
    cert = halving(12)
    assert MinorCertificate.from_json(cert.to_json()) == cert
    rep = nabla_brute(petersen_graph(), 1)
    assert MinorCertificate.from_json(rep.certificate.to_json()) == rep.certificate


@pytest.mark.parametrize("G, k, value", [
    (petersen_graph(), 0, Fraction(3, 2)),
    (cycle_graph(6), 1, Fraction(1)),
    (complete_graph(4), 0, Fraction(3, 2)),
    (complete_graph(1), 0, Fraction(0)),
    (complete_graph(1), 5, Fraction(0)),
    # contracting the five spokes gives K_5; with h parts at most min(h(h-1)/2, 5+h) edges survive
    (petersen_graph(), 1, Fraction(2)),
])
def test_nabla_hand_values(G, k, value):
    rep = nabla_brute(G, k)
    assert rep.density == value
    assert rep.density == Fraction(rep.edges, rep.vertices)
    assert verify_certificate(G, rep.model, rep.certificate)


@given(graphs(max_n=6), st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_nabla_brute_matches_partition_oracle(G, k):
    from helpers import nabla_oracle
    assert nabla_brute(G, k).density == nabla_oracle(G, k)


@given(graphs(max_n=8), st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_nabla_monotone_and_greedy_below(G, k):
    b = nabla_brute(G, k)
    assert b.density <= nabla_brute(G, k + 1).density
    g = nabla_greedy(G, k)
    assert verify_certificate(G, g.model, g.certificate)
    assert g.density <= b.density
    if G.n:
        assert nabla_greedy(G, 0).density >= Fraction(G.m, G.n)
        H, _ = induced_subgraph(G, range(G.n - 1))
        assert nabla_brute(H, k).density <= b.density


def test_nabla_refuses_large_and_greedy_scales():
    with pytest.raises(RefusalError):
        nabla_brute(path_graph(11), 0)
    assert nabla_greedy(cycle_graph(6), 1).density >= 1
    assert nabla_greedy(petersen_graph(), 1).density <= 2
    rep = nabla_greedy(gnp(60, .1, random.Random(0)), 2)
    assert verify_certificate(gnp(60, .1, random.Random(0)), rep.model, rep.certificate)


def test_find_k1t_examples():
    C6 = cycle_graph(6)
    cert = find_k1t(C6, 3)
    assert cert is not None and verify_certificate(C6, complete_graph(3), cert)
    assert find_k1t(complete_graph(4), 3) is None
    K = k1t_graph(4)
    assert verify_certificate(K, complete_graph(4), find_k1t(K, 4))
    with pytest.raises(RefusalError):
        find_k1t(K, 6)
    assert find_k1t(k1t_graph(6), 6, budget=10 ** 5) is not None
    assert find_k1t(K, 1) is not None and find_k1t(empty_graph(0), 1) is None


@given(graphs(max_n=9), st.integers(2, 3))
@settings(max_examples=80, deadline=None)
def test_find_k1t_matches_networkx(G, t):
    cert = find_k1t(G, t)
    assert (cert is not None) == contains_oracle(G, k1t_graph(t))
    if cert is not None:
        assert verify_certificate(G, complete_graph(t), cert)


def _check(G, out):
    if isinstance(out, DenseMinor):
        assert verify_certificate(G, out.graph, out.certificate)
    elif isinstance(out, CliqueMinor):
        assert verify_certificate(G, complete_graph(out.t), out.certificate)
    else:
        assert isinstance(out, Failed) and out.stage


def test_densify_examples():
    C6 = cycle_graph(6)
    for seed in range(5):
        _check(C6, densify_or_clique(C6, 3, 0.1, 0.01, seed))
    out = densify_or_clique(complete_graph(16), 2, 0.5, 64, 0)
    assert isinstance(out, Failed) and out.stage == "peel"
    with pytest.raises(ValueError):
        densify_or_clique(C6, 2, 1.5, 1, 0)


def _sparse(n, d, seed):
    return gnp(n, d / n, random.Random(seed))


def test_densify_dense_path_and_iteration():
    G = _sparse(600, 16, 0)
    out = densify_or_clique(G, 2, 0.05, 0.5, 1)
    assert isinstance(out, DenseMinor) and out.certificate.depth == 1
    _check(G, out)
    two = iterate_densify(G, 2, 0.05, 2, 1, c=0.5)
    _check(G, two)
    assert two.diagnostics["history"][0] == "dense"
    assert two.certificate.measured_depth() <= two.certificate.depth
    second = 4 if two.kind == "clique" else 1
    assert two.certificate.depth == composed_depth(1, second)


@pytest.mark.parametrize("seed", range(4))
def test_densify_deterministic_and_single_round(seed):
    G = gnp(40, .5, random.Random(seed))
    a = densify_or_clique(G, 2, 0.2, 0.05, seed)
    b = densify_or_clique(G, 2, 0.2, 0.05, seed)
    assert a == b
    one = iterate_densify(G, 2, 0.2, 1, seed, c=0.05)
    assert one.kind == a.kind
    if not isinstance(a, Failed):
        assert one.certificate == a.certificate


def test_shallow_clique_parameters():
    G = gnp(100, .3, random.Random(1))
    res = shallow_clique(G, 1.0, 3, c=1e-6)
    assert (res.t, res.m, res.d) == (2, 18, 4 ** 18)
    _check(G, res.outcome)
    tiny = shallow_clique(path_graph(10), 1.0, 0)
    assert tiny.t == 1 and isinstance(tiny.outcome, CliqueMinor)
    assert verify_certificate(path_graph(10), complete_graph(1), tiny.outcome.certificate)


def test_iter3_params():
    p = iter3_params(16, 0.75, 1, math.e)
    assert p.eps == pytest.approx(1 / 12, abs=1e-15) and (p.m, p.t) == (72, 3)
    assert iter3_params(5, 1, 1, 7).eps == iter3_params(900, 1, 1, 7).eps
    ts = [iter3_params(k, 0.8, 1, 2).t for k in range(1, 200)]
    assert ts == sorted(ts)
    with pytest.raises(ValueError):
        iter3_params(16, 0.5, 1, math.e)


def test_expansion_bound():
    assert expansion_bound_from_witness(lambda e, k: 2, 1) == 4
    assert expansion_bound_from_witness(lambda e, k: 1 / e, 0) == 8
    assert expansion_bound_from_witness(lambda e, k: 1 / e, 3) == 32


def test_expansion_bound_dominates_measured_density():
    family = [cycle_graph(n) for n in range(3, 10)] + [path_graph(n) for n in range(1, 10)]
    for k in range(3):
        measured = max(nabla_brute(G, k).density for G in family)
        f = expansion_bound_from_witness(lambda e, kk: measured, k)
        assert all(nabla_brute(G, k).density <= f for G in family)
