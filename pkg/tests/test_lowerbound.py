import random
from itertools import combinations

import pytest

from twkernel.errors import InputError, ParameterError
from twkernel.graph import Graph, complete_graph, disjoint_union, path_graph, cycle_graph
from twkernel.lowerbound import (compose_t5, compose_t6, edge_clique_cover_join, eweight_closed_form,
                                 eweight_offset, join_decomposition, join_label, join_treewidth,
                                 materialize_join, t6_witness_decomposition)
from twkernel.modulators import INDEPENDENT_SET, verify_modulator
from twkernel.oracles import (elimination_cost, layout_cutwidth, treewidth_exact,
                              validate_decomposition)
from twkernel.suites import random_graph, random_subcubic_graph, shuffled_copy

P6 = path_graph(6)
P2_C4 = disjoint_union(path_graph(2), cycle_graph(4, start=2))


# -- co-bipartite composition --------------------------------------------------

def test_t5_counts_and_k_prime():
    p4 = path_graph(4)
    wg, b, k_prime, layout = compose_t5([(p4, 2), (shuffled_copy(random.Random(1), p4), 2)])
    assert len(layout.bits_one) + len(layout.bits_zero) == 2
    assert len(layout.b_nodes) == 4 and len(layout.b_edges) == 6
    assert len(layout.a_side) == 10 and wg.graph.n == 22
    assert k_prime == 9791 + 2 == layout.k_prime
    assert b == layout.b_side and not (layout.a_side & b)


def test_t5_structure():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.choice((4, 5, 6))
        g = random_subcubic_graph(rng, n)
        t = rng.choice((2, 3, 4))
        inputs = [(g, 1)] + [(shuffled_copy(rng, g), 1) for _ in range(t - 1)]
        wg, b, _, layout = compose_t5(inputs)
        gr = wg.graph
        assert layout.t in (2, 4) and layout.t >= t
        assert gr.is_clique(sorted(layout.a_side)) and gr.is_clique(sorted(layout.b_side))
        bits = set(layout.bits_one) | set(layout.bits_zero)
        n = layout.n
        for (i, j), v in layout.a_reps.items():
            assert len(gr.neighbors(v) & bits) == layout.log_t
            assert wg.weight[v] == n ** 3
            assert gr.neighbors(v) & b < gr.neighbors(layout.dummies[i]) & b
        for j, v in enumerate(layout.b_nodes):
            assert wg.weight[v] == n ** 3 - layout.degrees[j]
        assert all(wg.weight[v] == n ** 6 for v in layout.dummies)
        assert all(wg.weight[v] == 2 for v in layout.b_edges.values())
        assert all(wg.weight[v] == n ** 5 for v in bits)


def test_t5_edge_representatives_follow_inputs():
    wg, _, _, layout = compose_t5([(P6, 1), (P2_C4, 1)])
    gr = wg.graph
    for i in range(2):
        edges = set(layout.node_edges(i))
        for (a, b), e in layout.b_edges.items():
            seen = {j for j in range(layout.n) if gr.has_edge(layout.a_reps[i, j], e)}
            assert seen == ({a, b} if (a, b) in edges else set())


def test_t5_rejects_mismatched_inputs():
    with pytest.raises(InputError):
        compose_t5([(P6, 1), (path_graph(5), 1)])
    with pytest.raises(InputError):
        compose_t5([(P6, 1), (P6, 2)])
    star4 = Graph(range(6), [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    with pytest.raises(InputError):
        compose_t5([(star4, 1)])
    # same counts but a different degree profile
    claw_path = Graph(range(5), [(0, 1), (0, 2), (0, 3), (3, 4)])
    with pytest.raises(InputError):
        compose_t5([(path_graph(5), 1), (claw_path, 1)])


def test_t5_small_inputs_are_decided_directly():
    # n = 2 is below log2 t = 3 for eight inputs
    wg, b, k_prime, layout = compose_t5([(path_graph(2), 1)] * 8)
    assert layout.solved is True and k_prime == 2 and wg.graph == complete_graph(3) and b == frozenset()
    wg, _, k_prime, layout = compose_t5([(path_graph(2), 0)] * 8)
    assert layout.solved is False and k_prime == 1
    assert treewidth_exact(wg.graph) > k_prime


def test_t5_pads_to_power_of_two():
    _, _, _, layout = compose_t5([(P6, 1), (P2_C4, 1), (P6, 1)])
    assert layout.t == 4 and layout.inputs[3] == layout.inputs[2]


def test_closed_form_examples():
    _, _, _, layout = compose_t5([(P6, 1), (P2_C4, 1)])
    base = eweight_offset(layout)
    assert base == 2 * (6 ** 4 + 6 ** 6) + 6 ** 3 + 6 ** 5
    pi = list(range(6))
    assert eweight_closed_form(layout, 0, pi, 6) == base
    # P6 placed along the path cuts one edge at every interior gap
    order = [layout.nodes[0].index(v) for v in range(6)]
    for j in range(1, 6):
        assert eweight_closed_form(layout, 0, order, j) == base + 1
    with pytest.raises(InputError):
        eweight_closed_form(layout, 0, pi, 0)
    with pytest.raises(InputError):
        eweight_closed_form(layout, 0, [0, 0, 1, 2, 3, 4], 1)


def test_closed_form_matches_simulated_elimination():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.choice((4, 6))
        g = random_subcubic_graph(rng, n)
        wg, _, _, layout = compose_t5([(g, 1), (shuffled_copy(rng, g), 1)])
        i = rng.randrange(2)
        pi = list(range(n))
        rng.shuffle(pi)
        order = [layout.a_reps[i, j] for j in pi]
        rest = [v for v in wg.graph if v not in set(order)]
        steps = elimination_cost(wg, order + rest).step_weights
        for j in range(1, n + 1):
            assert steps[j - 1] == eweight_closed_form(layout, i, pi, j)
        cut = max(eweight_closed_form(layout, i, pi, j) for j in range(1, n + 1)) - eweight_offset(layout)
        nodes_order = [layout.nodes[i][j] for j in pi]
        assert cut == layout_cutwidth(layout.inputs[i], nodes_order)


# -- joins and the vertex cover composition ------------------------------------

def test_join_treewidth_examples():
    k2 = complete_graph(2)
    assert join_treewidth([1, 1], 2) == 3 == treewidth_exact(materialize_join([k2, k2]))
    assert join_treewidth([4], 9) == 4
    with pytest.raises(InputError):
        join_treewidth([], 3)


def test_join_treewidth_matches_oracle():
    rng = random.Random(7)
    for _ in range(60):
        a = random_graph(rng, rng.randint(1, 4), 0.5)
        b = random_graph(rng, rng.randint(1, 4), 0.5)
        got = join_treewidth([treewidth_exact(a), treewidth_exact(b)], [a.n, b.n])
        assert got == treewidth_exact(materialize_join([a, b]))


def test_edge_clique_cover_examples():
    g = path_graph(3)
    cover = edge_clique_cover_join([g, g])
    assert len(cover) == 2 + 9
    assert all(len(c) <= 4 for c in cover)
    assert cover[0] == {join_label(3, 0, 0), join_label(3, 0, 1), join_label(3, 1, 0), join_label(3, 1, 1)}


def test_edge_clique_cover_covers_every_join_edge():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 5)
        t = rng.randint(1, 4)
        base = random_graph(rng, n, 0.5)
        inputs = [shuffled_copy(rng, base) for _ in range(t)]
        cover = edge_clique_cover_join(inputs)
        assert all(len(c) <= 2 * t for c in cover)
        h = materialize_join(inputs)
        for u, v in h.edges():
            assert any(u in c and v in c for c in cover), (u, v)
        for c in cover:
            assert h.is_clique(sorted(c))


def test_t6_parameters():
    g = path_graph(8)
    wg, s, k_prime, layout = compose_t6([(g, 3), (g, 3)])
    assert (k_prime, layout.d, layout.c) == (11, 7, 4)
    assert 2 * layout.d > k_prime and layout.c + layout.d <= k_prime
    assert len(s) == 2 * (g.m + 8 * 8 * 1)
    with pytest.raises(ParameterError):
        compose_t6([(path_graph(3), 1), (path_graph(3), 1)])


def test_t6_structure_and_witness():
    rng = random.Random(11)
    for _ in range(5):
        base = random_graph(rng, 8, 0.4)
        inputs = [(base, 3), (shuffled_copy(rng, base), 3)]
        wg, s, k_prime, layout = compose_t6(inputs)
        gr = wg.graph
        assert verify_modulator(gr, s, INDEPENDENT_SET)
        assert gr.induced(layout.core).m == 0
        assert all(wg.weight[v] == 1 for v in layout.core)
        assert all(wg.weight[v] == layout.d for v in s)
        for r, (x, y) in enumerate(layout.added_pairs):
            assert gr.neighbors(x) == gr.neighbors(y) == layout.cover[r]
        graphs = [g for g, _ in inputs]
        h = materialize_join(graphs)
        best = min(treewidth_exact(g) for g in graphs)
        assert validate_decomposition(h, join_decomposition(graphs)) == 8 + best
        width = validate_decomposition(gr, t6_witness_decomposition(layout), wg.weight)
        if best <= 3:
            assert width <= k_prime


def test_t6_join_labels_match_join():
    a, b = path_graph(3), cycle_graph(3)
    h = materialize_join([a, b])
    for i, g in enumerate((a, b)):
        for p, q in combinations(range(3), 2):
            assert h.has_edge(join_label(3, i, p), join_label(3, i, q)) == g.has_edge(p, q)
