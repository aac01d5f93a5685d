"""Immutable simple graphs and the local predicates the reduction rules use.

Vertices are non-negative integers.  Every transformation returns a new
graph; nothing here mutates its input.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import InputError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph with frozen adjacency sets."""

    __slots__ = ("_adj", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            _check_id(v)
            adj.setdefault(v, set())
        for u, v in edges:
            _check_id(u)
            _check_id(v)
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            nu = adj.setdefault(u, set())
            if v in nu:
                raise InputError(f"parallel edge {{{u}, {v}}}")
            nu.add(v)
            adj.setdefault(v, set()).add(u)
        self._adj = {v: frozenset(nb) for v, nb in sorted(adj.items())}
        self._hash = None

    @classmethod
    def _from_adj(cls, adj: Mapping[int, Iterable[int]]) -> "Graph":
        # trusted constructor: caller guarantees symmetry and no loops
        g = cls.__new__(cls)
        g._adj = {v: frozenset(adj[v]) for v in sorted(adj)}
        g._hash = None
        return g

    # -- queries ---------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._adj.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise InputError(f"unknown vertex {v}") from None

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u, nb in self._adj.items() for v in sorted(nb) if u < v]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return MappingProxyType(self._adj)

    def fresh_id(self) -> int:
        return max(self._adj, default=-1) + 1

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        for i, u in enumerate(vs):
            nb = self._adj[u]
            for w in vs[i + 1:]:
                if w not in nb:
                    return False
        return True

    def nonadjacent_pairs(self, vs: Iterable[int]) -> list[Edge]:
        vs = sorted(vs)
        return [(u, w) for u, w in combinations(vs, 2) if w not in self._adj[u]]

    def components(self, within: Iterable[int] | None = None) -> list[frozenset[int]]:
        """Connected components of the subgraph induced by ``within``."""
        allowed = set(self._adj) if within is None else set(within)
        seen: set[int] = set()
        out = []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y in allowed and y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def reachable(self, source: int, avoid: Iterable[int] = ()) -> set[int]:
        """Vertices reachable from ``source`` in the graph minus ``avoid``."""
        blocked = set(avoid)
        if source in blocked:
            return set()
        seen = {source}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in seen and y not in blocked:
                    seen.add(y)
                    queue.append(y)
        return seen

    def connected_avoiding(self, a: int, b: int, avoid: Iterable[int]) -> bool:
        return b in self.reachable(a, avoid)

    def neighborhood_of_set(self, vs: Iterable[int]) -> frozenset[int]:
        vs = set(vs)
        out: set[int] = set()
        for v in vs:
            out |= self._adj[v]
        return frozenset(out - vs)

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    # -- transformations -------------------------------------------------

    def remove_vertices(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        return Graph._from_adj({v: nb - drop for v, nb in self._adj.items() if v not in drop})

    def induced(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        for v in keep:
            self.neighbors(v)
        return Graph._from_adj({v: self._adj[v] & keep for v in keep})

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Add edges; already-present edges are ignored."""
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise InputError(f"edge {{{u}, {v}}} has an unknown endpoint")
            adj[u].add(v)
            adj[v].add(u)
        return Graph._from_adj(adj)

    def complete(self, vs: Iterable[int]) -> "Graph":
        return self.add_edges(combinations(sorted(set(vs)), 2))

    def add_vertex(self, v: int, neighbors: Iterable[int] = ()) -> "Graph":
        _check_id(v)
        if v in self._adj:
            raise InputError(f"vertex {v} already present")
        adj = {u: set(nb) for u, nb in self._adj.items()}
        adj[v] = set()
        for u in neighbors:
            if u not in adj or u == v:
                raise InputError(f"bad neighbor {u} for new vertex {v}")
            adj[v].add(u)
            adj[u].add(v)
        return Graph._from_adj(adj)

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        if len(set(mapping[v] for v in self._adj)) != self.n:
            raise InputError("relabeling is not injective")
        return Graph._from_adj({mapping[v]: {mapping[u] for u in nb} for v, nb in self._adj.items()})


def _check_id(v) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise InputError(f"vertex ids must be non-negative integers, got {v!r}")


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weight: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        w = dict(self.weight)
        if set(w) != set(self.graph.vertices):
            raise InputError("weights must be given for exactly the graph's vertices")
        for v, x in w.items():
            if not isinstance(x, int) or x < 1:
                raise InputError(f"weight of vertex {v} must be a positive integer, got {x!r}")
        object.__setattr__(self, "weight", MappingProxyType(dict(sorted(w.items()))))

    @classmethod
    def unit(cls, g: Graph) -> "WeightedGraph":
        return cls(g, {v: 1 for v in g})

    def total(self, vs: Iterable[int] | None = None) -> int:
        if vs is None:
            return sum(self.weight.values())
        return sum(self.weight[v] for v in vs)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.graph == other.graph and dict(self.weight) == dict(other.weight)

    def __hash__(self):
        return hash((self.graph, frozenset(self.weight.items())))


@dataclass(frozen=True)
class SeparatorSet:
    vertices: frozenset[int]
    almost_clique_witness: int | None = None


def is_simplicial(g: Graph, v: int) -> bool:
    return g.is_clique(sorted(g.neighbors(v)))


def special_neighbors(g: Graph, v: int) -> frozenset[int]:
    """Neighbors ``w`` of ``v`` such that N(v) - {w} is a clique."""
    nb = g.neighbors(v)
    missing = g.nonadjacent_pairs(nb)
    if not missing:
        return nb
    # w must hit every nonadjacent pair
    candidates = set(missing[0])
    for pair in missing[1:]:
        candidates &= set(pair)
        if not candidates:
            break
    return frozenset(candidates)


def is_almost_simplicial(g: Graph, v: int) -> bool:
    return bool(special_neighbors(g, v))


def contract_edge(g: Graph, u: int, v: int, keep: int) -> Graph:
    if not g.has_edge(u, v):
        raise InputError(f"cannot contract non-edge {{{u}, {v}}}")
    if keep not in (u, v) and keep in g:
        raise InputError(f"contraction target {keep} must be an endpoint or a fresh id")
    _check_id(keep)
    merged = (g.neighbors(u) | g.neighbors(v)) - {u, v}
    adj = {x: set(nb) - {u, v} for x, nb in g.adjacency().items() if x not in (u, v)}
    adj[keep] = set(merged)
    for x in merged:
        adj[x].add(keep)
    return Graph._from_adj(adj)


def eliminate_vertex(g: Graph, v: int) -> Graph:
    nb = g.neighbors(v)
    adj = {x: set(ns) for x, ns in g.adjacency().items() if x != v}
    for x in nb:
        adj[x].discard(v)
        adj[x] |= nb - {x}
    return Graph._from_adj(adj)


def fill_edges(g: Graph, v: int) -> list[Edge]:
    """Edges that eliminating ``v`` would add."""
    return g.nonadjacent_pairs(g.neighbors(v))


# Small named graphs, used by tests, examples and the CLI fixtures.

def complete_graph(n: int, start: int = 0) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, combinations(vs, 2))


def path_graph(n: int, start: int = 0) -> Graph:
    vs = list(range(start, start + n))
    return Graph(vs, zip(vs, vs[1:]))


def cycle_graph(n: int, start: int = 0) -> Graph:
    vs = list(range(start, start + n))
    return Graph(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def complete_bipartite(a: int, b: int) -> Graph:
    left = range(a)
    right = range(a, a + b)
    return Graph(range(a + b), [(u, v) for u in left for v in right])


def star_graph(leaves: int) -> Graph:
    return Graph(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union, relabeling each operand onto consecutive ids."""
    vertices, edges, offset = [], [], 0
    for g in graphs:
        idx = {v: offset + i for i, v in enumerate(g.vertices)}
        vertices.extend(idx.values())
        edges.extend((idx[u], idx[v]) for u, v in g.edges())
        offset += g.n
    return Graph(vertices, edges)


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between different operands."""
    vertices, edges, parts, offset = [], [], [], 0
    for g in graphs:
        idx = {v: offset + i for i, v in enumerate(g.vertices)}
        vertices.extend(idx.values())
        edges.extend((idx[u], idx[v]) for u, v in g.edges())
        parts.append(list(idx.values()))
        offset += g.n
    for a, b in combinations(range(len(parts)), 2):
        edges.extend((u, v) for u in parts[a] for v in parts[b])
    return Graph(vertices, edges)
