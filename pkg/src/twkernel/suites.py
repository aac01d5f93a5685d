"""Seeded random instances and the oracle-agreement checks run by ``verify``.

Every case draws from its own ``random.Random`` seeded by the suite name,
the run seed and the case index, so results do not depend on the order
in which cases run.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, WeightedGraph, join
from .lowerbound import compose_t5, eweight_closed_form, join_treewidth
from .modulators import FOREST, INDEPENDENT_SET, approx_feedback_vertex_set, approx_vertex_cover
from .oracles import elimination_cost, expand_weights, treewidth_exact, weighted_treewidth_exact
from .reduction import Instance, Verdict, replay
from .vc_kernel import kernelize_vc
from .fvs_kernel import kernelize_fvs


def case_rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{index}")


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(range(n), [e for e in combinations(range(n), 2) if rng.random() < p])


def random_sparse_graph(rng: random.Random, n: int, extra: int) -> Graph:
    """A random tree on n vertices plus ``extra`` random edges."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for _ in range(extra):
        if n >= 2:
            a, b = sorted(rng.sample(range(n), 2))
            edges.add((a, b))
    return Graph(range(n), edges)


def random_path_heavy_graph(rng: random.Random, n: int) -> Graph:
    """A small dense core with long paths hanging off a clique inside it.

    Interior path vertices only see core vertices of one clique, which is
    the situation the path rules of the forest kernel look for.
    """
    core = rng.randint(2, min(5, n - 1))
    clique = list(range(rng.randint(1, core)))
    edges = set(combinations(clique, 2))
    for u, v in combinations(range(core), 2):
        if rng.random() < 0.4:
            edges.add((u, v))
    rest = list(range(core, n))
    prev = None
    for v in rest:
        if prev is not None and rng.random() < 0.85:
            edges.add((prev, v))
        for x in rng.sample(clique, rng.randint(0, min(2, len(clique)))):
            edges.add((x, v))
        prev = v
    if rest and rng.random() < 0.5:
        edges.add((rng.randrange(core), rest[-1]))
    return Graph(range(n), edges)


def random_rotating_path_graph(rng: random.Random, n: int) -> Graph:
    """Clique X plus paths whose i-th vertex sees the (i mod |X|)-th member of X.

    With |X| >= 3 no interior vertex is almost simplicial, so only the
    path rules can shorten these paths.
    """
    size = rng.randint(3, 4)
    x = list(range(size))
    hubs = list(range(size, size + rng.randint(1, 2)))
    edges = set(combinations(x, 2))
    nxt = hubs[-1] + 1
    while nxt < n:
        length = rng.randint(5, max(5, n - nxt))
        path = list(range(nxt, min(n, nxt + length)))
        shift = rng.randrange(size)
        for i, v in enumerate(path):
            if i:
                edges.add((path[i - 1], v))
            edges.add((x[(i + shift) % size], v))
        # anchor both ends away from X so they are not almost simplicial
        edges.add((rng.choice(hubs), path[0]))
        edges.add((rng.choice(hubs), path[-1]))
        nxt += len(path)
    return Graph(range(n), edges)


def random_instance_graph(rng: random.Random, max_n: int = 12) -> Graph:
    n = rng.randint(1, max_n)
    kind = rng.random()
    if kind < 0.4:
        return random_graph(rng, n, rng.uniform(0.1, 0.7))
    if kind < 0.7:
        return random_sparse_graph(rng, n, rng.randint(0, n))
    if n < 3:
        return random_graph(rng, n, 0.5)
    return random_path_heavy_graph(rng, n)


def random_weighted_graph(rng: random.Random, max_n: int = 7, max_w: int = 4) -> WeightedGraph:
    g = random_graph(rng, rng.randint(1, max_n), rng.uniform(0.2, 0.8))
    return WeightedGraph(g, {v: rng.randint(1, max_w) for v in g})


def random_subcubic_graph(rng: random.Random, n: int) -> Graph:
    while True:
        g = random_sparse_graph(rng, n, rng.randint(0, n // 2)) if rng.random() < 0.5 \
            else random_graph(rng, n, rng.uniform(0.1, 0.5))
        if all(g.degree(v) <= 3 for v in g):
            return g


def shuffled_copy(rng: random.Random, g: Graph) -> Graph:
    ids = list(g.vertices)
    perm = ids[:]
    rng.shuffle(perm)
    return g.relabel(dict(zip(ids, perm)))


@dataclass
class CaseResult:
    agree: bool
    detail: str = ""


def _safety(rng: random.Random, mode: str, max_n: int) -> tuple[CaseResult, Instance, object]:
    g = random_instance_graph(rng, max_n)
    k = rng.randint(0, g.n)
    if mode == "vc":
        inst = Instance(g, k, approx_vertex_cover(g), INDEPENDENT_SET)
        out = kernelize_vc(inst)
    else:
        inst = Instance(g, k, approx_feedback_vertex_set(g), FOREST)
        out = kernelize_fvs(inst)
    truth = treewidth_exact(g) <= k
    if out.verdict is Verdict.REDUCED:
        if replay(inst, out.trace) != out.instance:
            return CaseResult(False, "trace does not replay"), inst, out
        got = treewidth_exact(out.instance.graph) <= out.instance.k
    else:
        got = out.verdict is Verdict.YES
    detail = f"n={g.n} m={g.m} k={k} verdict={out.verdict.value} oracle={'yes' if truth else 'no'}"
    return CaseResult(got == truth, detail), inst, out


def case_safety_vc(seed: int, index: int) -> CaseResult:
    return _safety(case_rng("safety-vc", seed, index), "vc", 12)[0]


def case_safety_fvs(seed: int, index: int) -> CaseResult:
    return _safety(case_rng("safety-fvs", seed, index), "fvs", 12)[0]


def case_formulas(seed: int, index: int) -> CaseResult:
    """One weight-expansion check, one join check and one cost-law check."""
    rng = case_rng("formulas", seed, index)
    wg = random_weighted_graph(rng)
    # the expansion has up to 28 vertices; the clique structure keeps the DP fast
    if treewidth_exact(expand_weights(wg), cap=wg.total()) != weighted_treewidth_exact(wg):
        return CaseResult(False, f"weight expansion mismatch on {wg.graph!r}")

    n = rng.randint(1, 4)
    a = random_graph(rng, n, 0.5)
    b = random_graph(rng, rng.randint(1, 4), 0.5)
    if join_treewidth([treewidth_exact(a), treewidth_exact(b)], [a.n, b.n]) != treewidth_exact(join(a, b)):
        return CaseResult(False, f"join formula mismatch on {a!r} and {b!r}")

    n = rng.choice((4, 6))
    g = random_subcubic_graph(rng, n)
    wg, _, _, layout = compose_t5([(g, 1), (shuffled_copy(rng, g), 1)])
    i = rng.randrange(layout.t)
    pi = list(range(n))
    rng.shuffle(pi)
    order = [layout.a_reps[i, j] for j in pi]
    rest = [v for v in wg.graph if v not in set(order)]
    steps = elimination_cost(wg, order + rest).step_weights
    for j in range(1, n + 1):
        if steps[j - 1] != eweight_closed_form(layout, i, pi, j):
            return CaseResult(False, f"cost law mismatch at instance {i} step {j}")
    return CaseResult(True)


SUITES = {
    "safety-vc": case_safety_vc,
    "safety-fvs": case_safety_fvs,
    "formulas": case_formulas,
}


def run_case(suite: str, seed: int, index: int) -> CaseResult:
    return SUITES[suite](seed, index)
