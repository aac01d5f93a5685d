"""Gadget generators behind the kernel lower bounds.

Two compositions are provided:

* ``compose_t5`` folds t subcubic cutwidth instances into one weighted
  co-bipartite graph whose weighted treewidth is small iff some input has
  small cutwidth;
* ``compose_t6`` folds t treewidth instances into a weighted graph with a
  small vertex cover, by replacing the join of the inputs with two heavy
  vertices per clique of an edge clique cover.

Vertex ids in the emitted graphs are laid out in blocks; the dataclasses
record which id plays which role.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import InputError, ParameterError
from .graph import Graph, WeightedGraph, complete_graph, join
from .oracles import TreeDecomposition, cutwidth_exact, treewidth_with_ordering, decomposition_from_ordering

Cutwidth = tuple[Graph, int]


def _log2(t: int) -> int:
    return t.bit_length() - 1


def _ceil_log2(t: int) -> int:
    return (t - 1).bit_length()


@dataclass(frozen=True)
class CompositionT5:
    """Role map of a composed co-bipartite gadget.

    ``nodes[i][j]`` is the original vertex of input i that plays node j
    (vertices sorted by degree, then id).  ``solved`` is set instead of the
    role maps when the inputs were too small to compose and were decided
    directly.
    """

    inputs: tuple[Graph, ...]
    n: int
    m: int
    k: int
    k_prime: int
    nodes: tuple[tuple[int, ...], ...] = ()
    degrees: tuple[int, ...] = ()
    a_reps: dict = field(default_factory=dict)
    dummies: tuple[int, ...] = ()
    bits_one: tuple[int, ...] = ()
    bits_zero: tuple[int, ...] = ()
    b_nodes: tuple[int, ...] = ()
    b_edges: dict = field(default_factory=dict)
    solved: bool | None = None

    @property
    def t(self) -> int:
        return len(self.inputs)

    @property
    def log_t(self) -> int:
        return _log2(self.t)

    @property
    def a_side(self) -> frozenset[int]:
        return frozenset(self.a_reps.values()) | frozenset(self.dummies)

    @property
    def b_side(self) -> frozenset[int]:
        return (frozenset(self.bits_one) | frozenset(self.bits_zero) | frozenset(self.b_nodes)
                | frozenset(self.b_edges.values()))

    def node_edges(self, i: int) -> list[tuple[int, int]]:
        """Edges of input i written in node numbers."""
        pos = {v: j for j, v in enumerate(self.nodes[i])}
        return [tuple(sorted((pos[u], pos[v]))) for u, v in self.inputs[i].edges()]

    def roles(self) -> list[tuple[int, str]]:
        out = []
        for (i, j), v in sorted(self.a_reps.items()):
            out.append((v, f"a-rep instance={i + 1} node={j + 1} original={self.nodes[i][j] + 1}"))
        for i, v in enumerate(self.dummies):
            out.append((v, f"dummy instance={i + 1}"))
        for q, v in enumerate(self.bits_one):
            out.append((v, f"selector bit={q + 1} value=1"))
        for q, v in enumerate(self.bits_zero):
            out.append((v, f"selector bit={q + 1} value=0"))
        for j, v in enumerate(self.b_nodes):
            out.append((v, f"node-rep node={j + 1} degree={self.degrees[j]}"))
        for (a, b), v in sorted(self.b_edges.items()):
            out.append((v, f"edge-rep nodes={a + 1},{b + 1}"))
        return sorted(out)


def _trivial_gadget(yes: bool) -> tuple[WeightedGraph, int]:
    # a triangle has treewidth 2
    return WeightedGraph.unit(complete_graph(3)), 2 if yes else 1


def _check_same_shape(graphs: Sequence[Graph], ks: Sequence[int]) -> None:
    if not graphs:
        raise InputError("at least one input instance is required")
    if len(set(ks)) > 1:
        raise InputError("inputs must share the same k")
    if len({g.n for g in graphs}) > 1:
        raise InputError("inputs must share the same vertex count")
    if len({g.m for g in graphs}) > 1:
        raise InputError("inputs must share the same edge count")


def compose_t5(inputs: Sequence[Cutwidth]) -> tuple[WeightedGraph, frozenset[int], int, CompositionT5]:
    """Compose subcubic cutwidth instances into a weighted co-bipartite graph.

    Returns the weighted graph, the clique B (a modulator to the clique A),
    the target k' and the role map.
    """
    graphs = [g for g, _ in inputs]
    ks = [k for _, k in inputs]
    _check_same_shape(graphs, ks)
    for i, g in enumerate(graphs):
        if any(g.degree(v) > 3 for v in g):
            raise InputError(f"input {i + 1} is not subcubic")
    counts = {tuple(sorted(Counter(g.degree(v) for v in g).items())) for g in graphs}
    if len(counts) > 1:
        raise InputError("inputs must have the same number of vertices of each degree")
    k, n, m = ks[0], graphs[0].n, graphs[0].m

    t = 1
    while t < len(graphs):
        t *= 2
    graphs = graphs + [graphs[-1]] * (t - len(graphs))
    log_t = _log2(t)

    if n < max(2, log_t):
        yes = any(cutwidth_exact(g) <= k for g in graphs)
        wg, kp = _trivial_gadget(yes)
        layout = CompositionT5(tuple(graphs), n, m, k, kp, solved=yes)
        return wg, frozenset(), kp, layout

    nodes = tuple(tuple(sorted(g.vertices, key=lambda v, g=g: (g.degree(v), v))) for g in graphs)
    degrees = tuple(graphs[0].degree(v) for v in nodes[0])

    a_reps = {(i, j): i * n + j for i in range(t) for j in range(n)}
    nxt = t * n
    dummies = tuple(range(nxt, nxt + t))
    nxt += t
    bits_one = tuple(range(nxt, nxt + log_t))
    nxt += log_t
    bits_zero = tuple(range(nxt, nxt + log_t))
    nxt += log_t
    b_nodes = tuple(range(nxt, nxt + n))
    nxt += n
    b_edges = {}
    for pair in combinations(range(n), 2):
        b_edges[pair] = nxt
        nxt += 1

    weight = {}
    for v in a_reps.values():
        weight[v] = n ** 3
    for v in dummies:
        weight[v] = n ** 6
    for v in bits_one + bits_zero:
        weight[v] = n ** 5
    for j, v in enumerate(b_nodes):
        weight[v] = n ** 3 - degrees[j]
    for v in b_edges.values():
        weight[v] = 2

    def selectors(i):
        return [bits_one[q] if (i >> q) & 1 else bits_zero[q] for q in range(log_t)]

    edges = []
    for i in range(t):
        pos = {v: j for j, v in enumerate(nodes[i])}
        sel = selectors(i)
        for j in range(n):
            a = a_reps[i, j]
            edges.extend((a, s) for s in sel)
            edges.append((a, b_nodes[j]))
        for u, v in graphs[i].edges():
            e = b_edges[tuple(sorted((pos[u], pos[v])))]
            edges.append((a_reps[i, pos[u]], e))
            edges.append((a_reps[i, pos[v]], e))
        d = dummies[i]
        edges.extend((d, s) for s in sel)
        edges.extend((d, x) for x in b_nodes)
        edges.extend((d, e) for e in b_edges.values())
    k_prime = t * (n ** 4 + n ** 6) + n ** 3 + n ** 5 * log_t + k - 1
    layout = CompositionT5(tuple(graphs), n, m, k, k_prime, nodes, degrees, a_reps, dummies,
                           bits_one, bits_zero, b_nodes, b_edges)
    a_side, b_side = sorted(layout.a_side), sorted(layout.b_side)
    edges.extend(combinations(a_side, 2))
    edges.extend(combinations(b_side, 2))
    g = Graph(range(nxt), set(tuple(sorted(e)) for e in edges))
    return WeightedGraph(g, weight), frozenset(b_side), k_prime, layout


def eweight_closed_form(layout: CompositionT5, i: int, pi: Sequence[int], j: int) -> int:
    """Closed-neighborhood weight of the j-th eliminated representative.

    ``pi`` lists the node numbers of instance ``i`` in elimination order
    and ``j`` counts steps from 1.  The value is a fixed offset plus the
    number of edges of input i cut after the first j nodes.
    """
    n, t = layout.n, layout.t
    if sorted(pi) != list(range(n)):
        raise InputError("pi must list every node number exactly once")
    if not 1 <= j <= n:
        raise InputError(f"step {j} is outside 1..{n}")
    placed = set(pi[:j])
    cut = sum(1 for u, v in layout.node_edges(i) if (u in placed) != (v in placed))
    return t * (n ** 4 + n ** 6) + n ** 3 + n ** 5 * layout.log_t + cut


def eweight_offset(layout: CompositionT5) -> int:
    n, t = layout.n, layout.t
    return t * (n ** 4 + n ** 6) + n ** 3 + n ** 5 * layout.log_t


# -- treewidth of joins, weighted treewidth by vertex cover --------------------

def join_treewidth(tws: Sequence[int], n: int | Sequence[int]) -> int:
    """Treewidth of the join of graphs with treewidths ``tws``.

    ``n`` is the common vertex count, or one count per graph; in general
    the join keeps one graph's decomposition and adds all other vertices
    to every bag.
    """
    if not tws:
        raise InputError("need at least one treewidth value")
    sizes = [n] * len(tws) if isinstance(n, int) else list(n)
    if len(sizes) != len(tws):
        raise InputError("need one vertex count per treewidth value")
    total = sum(sizes)
    return min(tw + total - size for tw, size in zip(tws, sizes))


def join_label(n: int, i: int, p: int) -> int:
    """Id of the p-th vertex (sorted by id) of input i inside the join."""
    return i * n + p


def edge_clique_cover_join(inputs: Sequence[Graph]) -> list[frozenset[int]]:
    """Edge clique cover of the join of the inputs, in join labels.

    The first m cliques take the j-th edge of every input; the rest pick
    one vertex per input, chosen by one bit of the input's index.
    """
    graphs = list(inputs)
    _check_same_shape(graphs, [0] * len(graphs))
    t, n = len(graphs), graphs[0].n
    pos = [{v: p for p, v in enumerate(g.vertices)} for g in graphs]
    edge_lists = [g.edges() for g in graphs]
    cover = []
    for j in range(graphs[0].m):
        clique = set()
        for i in range(t):
            u, v = edge_lists[i][j]
            clique.update((join_label(n, i, pos[i][u]), join_label(n, i, pos[i][v])))
        cover.append(frozenset(clique))
    for r in range(_ceil_log2(t)):
        for p in range(n):
            for q in range(n):
                cover.append(frozenset(join_label(n, i, q if (i >> r) & 1 else p) for i in range(t)))
    return cover


@dataclass(frozen=True)
class CompositionT6:
    inputs: tuple[Graph, ...]
    n: int
    m: int
    k: int
    k_prime: int
    d: int
    c: int
    cover: tuple[frozenset[int], ...]
    added_pairs: tuple[tuple[int, int], ...]

    @property
    def t(self) -> int:
        return len(self.inputs)

    @property
    def core(self) -> frozenset[int]:
        return frozenset(range(self.t * self.n))

    def roles(self) -> list[tuple[int, str]]:
        out = []
        for i in range(self.t):
            for p, v in enumerate(self.inputs[i].vertices):
                out.append((i * self.n + p, f"core instance={i + 1} original={v + 1}"))
        for r, pair in enumerate(self.added_pairs):
            members = ",".join(str(x + 1) for x in sorted(self.cover[r]))
            for v in pair:
                out.append((v, f"cover-vertex clique={r + 1} members={members}"))
        return sorted(out)


def compose_t6(inputs: Sequence[tuple[Graph, int]]) -> tuple[WeightedGraph, frozenset[int], int, CompositionT6]:
    """Compose treewidth instances into weighted treewidth by vertex cover.

    Raises :class:`ParameterError` when d = k' - 2t fails d >= 1 or 2d > k'.
    """
    graphs = [g for g, _ in inputs]
    ks = [k for _, k in inputs]
    _check_same_shape(graphs, ks)
    t, n, m, k = len(graphs), graphs[0].n, graphs[0].m, ks[0]
    k_prime = (t - 1) * n + k
    c = 2 * t
    d = k_prime - c
    if d < 1:
        raise ParameterError(f"d = k' - 2t = {d} must be at least 1 (k' = {k_prime}, t = {t})")
    if 2 * d <= k_prime:
        raise ParameterError(f"2d = {2 * d} must exceed k' = {k_prime}")
    cover = edge_clique_cover_join(graphs)
    base = t * n
    weight = {v: 1 for v in range(base)}
    pairs, edges = [], []
    for r, clique in enumerate(cover):
        pair = (base + 2 * r, base + 2 * r + 1)
        pairs.append(pair)
        for x in pair:
            weight[x] = d
            edges.extend((x, u) for u in clique)
    g = Graph(range(base + 2 * len(cover)), edges)
    layout = CompositionT6(tuple(graphs), n, m, k, k_prime, d, c, tuple(cover), tuple(pairs))
    return WeightedGraph(g, weight), frozenset(x for p in pairs for x in p), k_prime, layout


def materialize_join(inputs: Sequence[Graph]) -> Graph:
    return join(*inputs)


def join_decomposition(inputs: Sequence[Graph]) -> TreeDecomposition:
    """Decomposition of the join: an optimal one of the best input with
    every vertex of the other inputs added to each bag."""
    graphs = list(inputs)
    t, n = len(graphs), graphs[0].n
    best_i, best = None, None
    for i, g in enumerate(graphs):
        tw, order = treewidth_with_ordering(g)
        if best is None or tw < best[0]:
            best_i, best = i, (tw, order)
    td = decomposition_from_ordering(graphs[best_i], best[1])
    pos = {v: p for p, v in enumerate(graphs[best_i].vertices)}
    foreign = frozenset(x for x in range(t * n) if x // n != best_i)
    bags = {x: frozenset(join_label(n, best_i, pos[v]) for v in bag) | foreign
            for x, bag in td.bags.items()}
    if not bags:
        bags = {0: foreign}
    return TreeDecomposition(bags, td.edges)


def t6_witness_decomposition(layout: CompositionT6) -> TreeDecomposition:
    """Extend the join decomposition by one bag per added vertex.

    Each added vertex sees one cover clique; its bag is that clique plus
    the vertex, hung below a bag that already contains the clique.
    """
    td = join_decomposition(layout.inputs)
    bags = dict(td.bags)
    edges = list(td.edges)
    nxt = max(bags) + 1
    for r, pair in enumerate(layout.added_pairs):
        clique = layout.cover[r]
        host = next(x for x, bag in td.bags.items() if clique <= bag)
        for v in pair:
            bags[nxt] = clique | {v}
            edges.append((host, nxt))
            nxt += 1
    return TreeDecomposition(bags, tuple(edges))
