"""Exact exponential solvers and polynomial validators used as ground truth.

Every solver has a configurable vertex cap; exceeding it raises
:class:`SizeLimitError` rather than falling back to an approximation.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import DecompositionError, InputError, SizeLimitError
from .graph import Edge, Graph, WeightedGraph, norm_edge


@dataclass
class Caps:
    treewidth: int = 24
    weighted_treewidth: int = 22
    cobipartite_side: int = 22
    cutwidth: int = 20
    bruteforce: int = 8
    expansion_weight: int = 10**4


CAPS = Caps()


@dataclass(frozen=True)
class EliminationResult:
    cost: int
    fill_edges: frozenset[Edge]
    step_weights: tuple[int, ...]


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...] = ()

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1


# -- bitmask helpers ------------------------------------------------------

def _index(g: Graph) -> tuple[list[int], dict[int, int], list[int]]:
    verts = list(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for v in verts:
        m = 0
        for u in g.neighbors(v):
            m |= 1 << idx[u]
        adj[idx[v]] = m
    return verts, idx, adj


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _outside_reach(adj: list[int], eliminated: int, i: int) -> int:
    """Vertices outside eliminated+{i} reachable from i through eliminated."""
    comp = 1 << i
    frontier = comp
    seen_nb = 0
    while frontier:
        nb = 0
        for j in _bits(frontier):
            nb |= adj[j]
        seen_nb |= nb
        frontier = nb & eliminated & ~comp
        comp |= frontier
    return seen_nb & ~eliminated & ~(1 << i)


def _mask_weight(mask: int, w: list[int]) -> int:
    return sum(w[j] for j in _bits(mask))


def _greedy_order(adj: list[int], w: list[int], free: int) -> list[int]:
    # min-fill with weighted-degree tie-break, restricted to free vertices
    cur = list(adj)
    alive = free
    everything = 0
    for i in range(len(adj)):
        everything |= 1 << i
    order = []
    while alive:
        best = None
        for i in _bits(alive):
            nb = cur[i]
            fill = 0
            for j in _bits(nb):
                fill += bin(nb & ~cur[j] & ~(1 << j)).count("1")
            key = (fill, _mask_weight(nb, w) + w[i], i)
            if best is None or key < best[0]:
                best = (key, i)
        i = best[1]
        nb = cur[i]
        for j in _bits(nb):
            cur[j] = (cur[j] | nb) & ~(1 << j) & ~(1 << i)
        cur[i] = 0
        alive &= ~(1 << i)
        order.append(i)
    return order


def _order_cost(adj: list[int], w: list[int], order: Sequence[int]) -> int:
    eliminated = 0
    cost = 0
    for i in order:
        cost = max(cost, w[i] + _mask_weight(_outside_reach(adj, eliminated, i), w))
        eliminated |= 1 << i
    return cost


def _subset_dp(adj: list[int], w: list[int], free: int, tail: int = 0) -> tuple[int, list[int]]:
    """Minimum elimination cost over orderings that eliminate ``free`` first.

    ``tail`` must be a clique; it is eliminated last, costing its total
    weight.  Returns (cost, ordering of free vertices).
    """
    tail_cost = _mask_weight(tail, w)
    guess = _greedy_order(adj, w, free)
    best = max(_order_cost(adj, w, guess), tail_cost)
    best_order = guess
    layer = {0: 0}
    parent: dict[int, tuple[int, int]] = {}
    size = bin(free).count("1")
    for _ in range(size):
        nxt: dict[int, int] = {}
        for state, val in layer.items():
            for i in _bits(free & ~state):
                c = w[i] + _mask_weight(_outside_reach(adj, state, i), w)
                if c < val:
                    c = val
                if c >= best:
                    continue
                t = state | (1 << i)
                old = nxt.get(t)
                if old is None or c < old:
                    nxt[t] = c
                    parent[t] = (state, i)
        layer = nxt
        if not layer:
            break
    if free in layer and max(layer[free], tail_cost) < best:
        best = max(layer[free], tail_cost)
        order = []
        state = free
        while state:
            prev, i = parent[state]
            order.append(i)
            state = prev
        best_order = order[::-1]
    if size == 0:
        best = tail_cost
    return best, best_order


def _component_dp(g: Graph, weight: Mapping[int, int]) -> tuple[int, list[int]]:
    cost, order = 0, []
    for comp in g.components():
        sub = g.induced(comp)
        verts, _, adj = _index(sub)
        w = [weight[v] for v in verts]
        c, o = _subset_dp(adj, w, (1 << len(verts)) - 1)
        cost = max(cost, c)
        order.extend(verts[i] for i in o)
    return cost, order


# -- public oracles -------------------------------------------------------

def treewidth_with_ordering(g: Graph, cap: int | None = None) -> tuple[int, list[int]]:
    cap = CAPS.treewidth if cap is None else cap
    if g.n > cap:
        raise SizeLimitError("treewidth_exact", g.n, cap)
    if g.n == 0:
        return 0, []
    cost, order = _component_dp(g, {v: 1 for v in g})
    return cost - 1, order


def treewidth_exact(g: Graph, cap: int | None = None) -> int:
    return treewidth_with_ordering(g, cap)[0]


def treewidth_bruteforce(g: Graph, cap: int | None = None) -> int:
    cap = CAPS.bruteforce if cap is None else cap
    if g.n > cap:
        raise SizeLimitError("treewidth_bruteforce", g.n, cap)
    if g.n == 0:
        return 0
    _, _, adj = _index(g)
    best = [g.n - 1]

    # depth-first over every ordering, simulating elimination with fill;
    # a branch stops once it cannot beat the best complete ordering
    def walk(cur: list[int], alive: int, worst: int) -> None:
        if not alive:
            best[0] = min(best[0], worst)
            return
        for i in _bits(alive):
            nb = cur[i]
            deg = bin(nb).count("1")
            w = max(worst, deg)
            if w >= best[0]:
                continue
            nxt = list(cur)
            for j in _bits(nb):
                nxt[j] = (cur[j] | nb) & ~(1 << j) & ~(1 << i)
            walk(nxt, alive & ~(1 << i), w)

    walk(list(adj), (1 << g.n) - 1, 0)
    return best[0]


def elimination_cost(wg: WeightedGraph, pi: Sequence[int]) -> EliminationResult:
    g = wg.graph
    if sorted(pi) != list(g.vertices):
        raise InputError("ordering is not a permutation of the vertex set")
    adj = {v: set(g.neighbors(v)) for v in g}
    original = g.edge_set()
    fill: set[Edge] = set()
    steps = []
    for v in pi:
        nb = adj.pop(v)
        steps.append(wg.weight[v] + sum(wg.weight[u] for u in nb))
        for u in nb:
            adj[u].discard(v)
        nbs = sorted(nb)
        for a_i, a in enumerate(nbs):
            for b in nbs[a_i + 1:]:
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                    fill.add(norm_edge(a, b))
    fill -= original
    return EliminationResult(max(steps, default=0), frozenset(fill), tuple(steps))


def weighted_treewidth_with_ordering(wg: WeightedGraph, cap: int | None = None) -> tuple[int, list[int]]:
    cap = CAPS.weighted_treewidth if cap is None else cap
    if wg.graph.n > cap:
        raise SizeLimitError("weighted_treewidth_exact", wg.graph.n, cap)
    if wg.graph.n == 0:
        return 0, []
    cost, order = _component_dp(wg.graph, wg.weight)
    return cost - 1, order


def weighted_treewidth_exact(wg: WeightedGraph, cap: int | None = None) -> int:
    return weighted_treewidth_with_ordering(wg, cap)[0]


def weighted_treewidth_cobipartite(wg: WeightedGraph, a: Iterable[int], b: Iterable[int],
                                   cap: int | None = None) -> int:
    """Exact weighted treewidth when ``b`` is a clique.

    Some optimal ordering eliminates ``a`` entirely before ``b``, so the
    dynamic program only ranges over subsets of ``a``.
    """
    return weighted_treewidth_cobipartite_ordering(wg, a, b, cap)[0]


def weighted_treewidth_cobipartite_ordering(wg: WeightedGraph, a: Iterable[int], b: Iterable[int],
                                            cap: int | None = None) -> tuple[int, list[int]]:
    cap = CAPS.cobipartite_side if cap is None else cap
    g = wg.graph
    a, b = set(a), set(b)
    if a & b or a | b != set(g.vertices):
        raise InputError("a and b must partition the vertex set")
    if not g.is_clique(sorted(b)):
        raise InputError("b is not a clique")
    if len(a) > cap:
        raise SizeLimitError("weighted_treewidth_cobipartite", len(a), cap)
    if g.n == 0:
        return 0, []
    verts, idx, adj = _index(g)
    w = [wg.weight[v] for v in verts]
    free = sum(1 << idx[v] for v in a)
    tail = sum(1 << idx[v] for v in b)
    cost, order = _subset_dp(adj, w, free, tail)
    return cost - 1, [verts[i] for i in order] + sorted(b)


def cutwidth_exact(g: Graph, cap: int | None = None) -> int:
    """Exact cutwidth; the cut after a prefix depends only on the prefix set."""
    cap = CAPS.cutwidth if cap is None else cap
    if g.n > cap:
        raise SizeLimitError("cutwidth_exact", g.n, cap)
    n = g.n
    if n <= 1:
        return 0
    _, _, adj = _index(g)
    full = (1 << n) - 1
    # cut(S) updated incrementally: adding i changes it by deg_out - deg_in
    cut = {0: 0}
    best = {0: 0}
    for _ in range(n):
        nxt_best: dict[int, int] = {}
        for state, val in best.items():
            cs = cut[state]
            for i in _bits(full & ~state):
                t = state | (1 << i)
                if t not in cut:
                    inside = bin(adj[i] & state).count("1")
                    cut[t] = cs + bin(adj[i]).count("1") - 2 * inside
                c = max(val, cut[t])
                old = nxt_best.get(t)
                if old is None or c < old:
                    nxt_best[t] = c
        best = nxt_best
    return best[full]


def cutwidth_bruteforce(g: Graph, cap: int | None = None) -> int:
    cap = CAPS.bruteforce if cap is None else cap
    if g.n > cap:
        raise SizeLimitError("cutwidth_bruteforce", g.n, cap)
    if g.n <= 1:
        return 0
    return min(layout_cutwidth(g, order) for order in permutations(g.vertices))


def layout_cutwidth(g: Graph, order: Sequence[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    worst = 0
    for gap in range(len(order) - 1):
        c = sum(1 for u, v in g.edges() if min(pos[u], pos[v]) <= gap < max(pos[u], pos[v]))
        worst = max(worst, c)
    return worst


def expand_weights(wg: WeightedGraph, cap: int | None = None) -> Graph:
    """Replace every vertex by a clique of w(v) copies with v's adjacency."""
    return expand_weights_with_copies(wg, cap)[0]


def expand_weights_with_copies(wg: WeightedGraph, cap: int | None = None) -> tuple[Graph, dict[int, list[int]]]:
    cap = CAPS.expansion_weight if cap is None else cap
    total = wg.total()
    if total > cap:
        raise SizeLimitError("expand_weights", total, cap)
    g = wg.graph
    nxt = g.fresh_id()
    copies: dict[int, list[int]] = {}
    for v in g:
        copies[v] = [v] + list(range(nxt, nxt + wg.weight[v] - 1))
        nxt += wg.weight[v] - 1
    edges = []
    for v in g:
        cs = copies[v]
        edges.extend((cs[i], cs[j]) for i in range(len(cs)) for j in range(i + 1, len(cs)))
    for u, v in g.edges():
        edges.extend((a, b) for a in copies[u] for b in copies[v])
    return Graph([c for cs in copies.values() for c in cs], edges), copies


def decomposition_from_ordering(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition whose bags are the maximal cliques of the filled graph."""
    if sorted(order) != list(g.vertices):
        raise InputError("ordering is not a permutation of the vertex set")
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g}
    higher: dict[int, frozenset[int]] = {}
    for v in order:
        up = {u for u in adj[v] if pos[u] > pos[v]}
        higher[v] = frozenset(up)
        for a in up:
            adj[a] |= up - {a}
    # bag(v) = {v} + higher(v); parent is the earliest higher neighbor
    bags = {v: higher[v] | {v} for v in order}
    parent = {v: min(higher[v], key=pos.__getitem__) if higher[v] else None for v in order}
    # absorb bags contained in their parent's bag
    alias = {}
    for v in order:
        p = parent[v]
        if p is not None and bags[v] <= bags[p]:
            alias[v] = p

    def rep(x):
        while x in alias:
            x = alias[x]
        return x

    kept = [v for v in order if v not in alias]
    edges = []
    roots = []
    for v in kept:
        p = parent[v]
        if p is None:
            roots.append(v)
        else:
            edges.append((rep(p), v))
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    ids = {v: i for i, v in enumerate(kept)}
    return TreeDecomposition({ids[v]: frozenset(bags[v]) for v in kept},
                             tuple((ids[a], ids[b]) for a, b in edges))


def validate_decomposition(g: Graph, td: TreeDecomposition, weights: Mapping[int, int] | None = None) -> int:
    """Check the three axioms and the tree shape; return the (weighted) width."""
    nodes = set(td.bags)
    adj: dict[int, set[int]] = {x: set() for x in nodes}
    for a, b in td.edges:
        if a not in nodes or b not in nodes:
            raise DecompositionError("tree", (a, b), f"tree edge {(a, b)} names an unknown bag")
        if a == b or b in adj[a]:
            raise DecompositionError("tree", (a, b), f"tree edge {(a, b)} is a loop or repeated")
        adj[a].add(b)
        adj[b].add(a)
    if nodes:
        if len(td.edges) != len(nodes) - 1 or not _connected(nodes, adj, nodes):
            raise DecompositionError("tree", None, "bags do not form a tree")
    where: dict[int, set[int]] = {v: set() for v in g}
    for x, bag in td.bags.items():
        for v in bag:
            if v not in where:
                raise DecompositionError("coverage", v, f"bag {x} contains unknown vertex {v}")
            where[v].add(x)
    for v, xs in where.items():
        if not xs:
            raise DecompositionError("coverage", v, f"vertex {v} is in no bag")
    for u, v in g.edges():
        if not where[u] & where[v]:
            raise DecompositionError("edge", (u, v), f"edge {{{u}, {v}}} is not inside any bag")
    for v, xs in where.items():
        if not _connected(xs, adj, xs):
            raise DecompositionError("subtree", v, f"bags containing {v} are not connected")
    if weights is None:
        return max((len(b) for b in td.bags.values()), default=0) - 1
    return max((sum(weights[v] for v in b) for b in td.bags.values()), default=0) - 1


def _connected(nodes: set[int], adj: Mapping[int, set[int]], allowed: set[int]) -> bool:
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen >= nodes


def min_fill_ordering(g: Graph) -> list[int]:
    verts, _, adj = _index(g)
    order = _greedy_order(adj, [1] * len(verts), (1 << len(verts)) - 1)
    return [verts[i] for i in order]
