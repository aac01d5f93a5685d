import random

import networkx as nx
import pytest
from hypothesis import given

from twkernel.errors import DecompositionError, InputError, SizeLimitError
from twkernel.graph import (Graph, WeightedGraph, complete_graph, contract_edge, cycle_graph, path_graph,
                            star_graph)
from twkernel.oracles import (TreeDecomposition, cutwidth_bruteforce, cutwidth_exact, decomposition_from_ordering,
                              elimination_cost, expand_weights, layout_cutwidth, min_fill_ordering,
                              treewidth_bruteforce, treewidth_exact, treewidth_with_ordering,
                              validate_decomposition, weighted_treewidth_cobipartite, weighted_treewidth_exact,
                              weighted_treewidth_with_ordering)
from twkernel.suites import random_graph, random_weighted_graph

from strategies import brute_cutwidth, brute_elimination_width, graphs, weighted_graphs


# -- treewidth ------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
def test_treewidth_of_complete_graphs(n):
    assert treewidth_exact(complete_graph(n)) == n - 1


def test_treewidth_small_examples():
    assert treewidth_exact(Graph(range(5))) == 0
    assert treewidth_exact(path_graph(6)) == 1
    assert treewidth_exact(star_graph(4)) == 1
    assert treewidth_exact(cycle_graph(5)) == 2 == brute_elimination_width(cycle_graph(5))
    assert treewidth_exact(Graph()) == 0


def test_treewidth_bruteforce_examples():
    assert treewidth_bruteforce(complete_graph(4)) == 3
    assert treewidth_bruteforce(path_graph(4)) == 1
    assert treewidth_bruteforce(cycle_graph(4)) == 2 == brute_elimination_width(cycle_graph(4))


def test_caps_are_enforced():
    with pytest.raises(SizeLimitError):
        treewidth_bruteforce(path_graph(9))
    with pytest.raises(SizeLimitError):
        treewidth_exact(path_graph(30))
    with pytest.raises(SizeLimitError):
        cutwidth_exact(path_graph(5), cap=4)
    with pytest.raises(SizeLimitError):
        expand_weights(WeightedGraph(path_graph(2), {0: 6000, 1: 6000}))


def test_treewidth_agrees_with_definition_by_permutations():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 6), rng.uniform(0.2, 0.8))
        assert treewidth_exact(g) == treewidth_bruteforce(g) == brute_elimination_width(g)


def test_treewidth_is_within_networkx_heuristic_bounds():
    rng = random.Random(6)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 12), rng.uniform(0.1, 0.7))
        h = nx.Graph()
        h.add_nodes_from(g.vertices)
        h.add_edges_from(g.edges())
        upper, _ = nx.algorithms.approximation.treewidth_min_fill_in(h)
        assert treewidth_exact(g) <= upper


def test_ordering_witness_has_matching_cost():
    rng = random.Random(8)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.2, 0.7))
        tw, order = treewidth_with_ordering(g)
        assert elimination_cost(WeightedGraph.unit(g), order).cost == tw + 1


def test_treewidth_minor_monotone_under_contraction():
    rng = random.Random(9)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 10), rng.uniform(0.2, 0.7))
        if g.m == 0:
            continue
        u, v = rng.choice(g.edges())
        assert treewidth_exact(contract_edge(g, u, v, u)) <= treewidth_exact(g)


# -- elimination cost and weighted treewidth --------------------------------------

def test_elimination_cost_examples():
    k5 = WeightedGraph.unit(complete_graph(5))
    assert elimination_cost(k5, [3, 1, 0, 4, 2]).cost == 5
    res = elimination_cost(WeightedGraph.unit(path_graph(3)), [0, 1, 2])
    assert res.step_weights == (2, 2, 1) and res.cost == 2
    k2 = WeightedGraph(path_graph(2), {0: 2, 1: 3})
    assert elimination_cost(k2, [1, 0]).cost == 5
    with pytest.raises(InputError):
        elimination_cost(k2, [0, 0])


def test_elimination_cost_records_fill():
    res = elimination_cost(WeightedGraph.unit(cycle_graph(4)), [0, 1, 2, 3])
    assert res.fill_edges == {(1, 3)}
    assert res.cost == max(res.step_weights)


def test_weighted_treewidth_examples():
    assert weighted_treewidth_exact(WeightedGraph(Graph([0]), {0: 5})) == 4
    assert weighted_treewidth_exact(WeightedGraph(path_graph(2), {0: 2, 1: 3})) == 4


def test_weighted_treewidth_with_unit_weights_is_treewidth():
    rng = random.Random(10)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 12), rng.uniform(0.1, 0.8))
        assert weighted_treewidth_exact(WeightedGraph.unit(g)) == treewidth_exact(g)


def test_cobipartite_examples():
    k2 = WeightedGraph(path_graph(2), {0: 2, 1: 3})
    assert weighted_treewidth_cobipartite(k2, {0}, {1}) == 4
    k3 = WeightedGraph(complete_graph(3), {0: 1, 1: 2, 2: 3})
    assert weighted_treewidth_cobipartite(k3, set(), {0, 1, 2}) == 5
    with pytest.raises(InputError):
        weighted_treewidth_cobipartite(WeightedGraph.unit(path_graph(3)), {1}, {0, 2})


def _random_cobipartite(rng, max_n=16, max_w=5):
    n = rng.randint(2, max_n)
    a = list(range(rng.randint(1, n - 1)))
    b = list(range(len(a), n))
    edges = [(u, v) for i, u in enumerate(a) for v in a[i + 1:]]
    edges += [(u, v) for i, u in enumerate(b) for v in b[i + 1:]]
    edges += [(u, v) for u in a for v in b if rng.random() < 0.4]
    g = Graph(range(n), edges)
    return WeightedGraph(g, {v: rng.randint(1, max_w) for v in g}), set(a), set(b)


def test_cobipartite_matches_general_dp():
    rng = random.Random(12)
    for _ in range(80):
        wg, a, b = _random_cobipartite(rng)
        assert weighted_treewidth_cobipartite(wg, a, b) == weighted_treewidth_exact(wg)
        unit = WeightedGraph.unit(wg.graph)
        assert weighted_treewidth_cobipartite(unit, a, b) == treewidth_exact(wg.graph)


@given(weighted_graphs(max_n=6))
def test_weighted_ordering_witness(wg):
    value, order = weighted_treewidth_with_ordering(wg)
    assert elimination_cost(wg, order).cost == value + 1


# -- cutwidth ---------------------------------------------------------------------

def test_cutwidth_examples():
    assert cutwidth_exact(path_graph(7)) == 1
    assert cutwidth_exact(complete_graph(4)) == 4 == brute_cutwidth(complete_graph(4))
    assert cutwidth_exact(cycle_graph(4)) == 2 == brute_cutwidth(cycle_graph(4))
    assert layout_cutwidth(path_graph(3), [0, 2, 1]) == 2


def test_cutwidth_matches_bruteforce():
    rng = random.Random(13)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 7), rng.uniform(0.2, 0.8))
        assert cutwidth_exact(g) == cutwidth_bruteforce(g) == brute_cutwidth(g)


# -- weight expansion ------------------------------------------------------------

def test_expand_weights_examples():
    g = cycle_graph(5)
    assert expand_weights(WeightedGraph.unit(g)) == g
    assert expand_weights(WeightedGraph(Graph([0]), {0: 3})) == complete_graph(3)
    wg = WeightedGraph(path_graph(2), {0: 2, 1: 1})
    out = expand_weights(wg)
    assert out == complete_graph(3)
    assert treewidth_exact(out) == 2 == weighted_treewidth_exact(wg)


def test_expand_weights_preserves_weighted_treewidth():
    rng = random.Random(14)
    for _ in range(60):
        wg = random_weighted_graph(rng, max_n=6, max_w=3)
        assert treewidth_exact(expand_weights(wg)) == weighted_treewidth_exact(wg)


# -- decompositions ----------------------------------------------------------------

def test_validate_examples():
    p3 = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({1, 2})}, ((0, 1),))
    assert validate_decomposition(path_graph(3), p3) == 1
    k3 = TreeDecomposition({0: frozenset({0, 1, 2})})
    assert validate_decomposition(complete_graph(3), k3) == 2
    c4 = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({2, 3})}, ((0, 1), (1, 2)))
    with pytest.raises(DecompositionError) as info:
        validate_decomposition(cycle_graph(4), c4)
    assert info.value.axiom == "edge" and info.value.witness == (0, 3)


def test_validate_reports_each_axiom():
    g = path_graph(3)
    with pytest.raises(DecompositionError) as info:
        validate_decomposition(g, TreeDecomposition({0: frozenset({0, 1})}))
    assert info.value.axiom == "coverage" and info.value.witness == 2
    split = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({2}), 2: frozenset({1, 2})}, ((0, 1), (1, 2)))
    with pytest.raises(DecompositionError) as info:
        validate_decomposition(g, split)
    assert info.value.axiom == "subtree" and info.value.witness == 1
    cyc = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({1})},
                            ((0, 1), (1, 2), (2, 0)))
    with pytest.raises(DecompositionError) as info:
        validate_decomposition(g, cyc)
    assert info.value.axiom == "tree"


def test_weighted_width():
    td = TreeDecomposition({0: frozenset({0, 1})})
    assert validate_decomposition(path_graph(2), td, {0: 2, 1: 3}) == 4


@given(graphs(min_n=1, max_n=9))
def test_decomposition_from_optimal_ordering_is_optimal(g):
    tw, order = treewidth_with_ordering(g)
    assert validate_decomposition(g, decomposition_from_ordering(g, order)) == tw


@given(graphs(min_n=1, max_n=10))
def test_min_fill_ordering_gives_valid_upper_bound(g):
    width = validate_decomposition(g, decomposition_from_ordering(g, min_fill_ordering(g)))
    assert width >= treewidth_exact(g)
