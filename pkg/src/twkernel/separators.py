"""Minimal separators, and minimal almost clique separators in particular.

The enumeration works vertex by vertex: if Q is a minimal separator of G
and Q - {x} is a clique, then Q - {x} is a clique minimal separator of
G - x.  Clique minimal separators of a graph are minimal separators of
every minimal triangulation, so they appear among the sets madj(y) of a
perfect elimination ordering of the MCS-M triangulation.  Each candidate
is then checked against G directly.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import InputError, SeparatorOverflowError
from .graph import Graph, SeparatorSet

DEFAULT_SEPARATOR_CAP = 10**6


def full_components(g: Graph, q: Iterable[int]) -> list[frozenset[int]]:
    """Components C of g - q with N(C) = q."""
    q = frozenset(q)
    for v in q:
        g.neighbors(v)
    rest = set(g.vertices) - q
    return [c for c in g.components(rest) if g.neighborhood_of_set(c) == q]


def is_minimal_separator(g: Graph, q: Iterable[int]) -> bool:
    return len(full_components(g, q)) >= 2


def almost_clique_witness(g: Graph, q: Iterable[int]) -> int | None:
    """Lowest v in q with q - {v} a clique, or None."""
    q = sorted(q)
    missing = g.nonadjacent_pairs(q)
    if not missing:
        return q[0] if q else None
    hit = set(missing[0])
    for pair in missing[1:]:
        hit &= set(pair)
    return min(hit) if hit else None


def mcs_m(g: Graph) -> tuple[list[int], dict[int, set[int]]]:
    """Minimal triangulation by maximum cardinality search (MCS-M).

    Returns the elimination ordering (first eliminated first) and the
    adjacency of the filled graph, for which that ordering is perfect.
    """
    weight = {v: 0 for v in g}
    unnumbered = set(g.vertices)
    filled = {v: set(g.neighbors(v)) for v in g}
    numbered_rev: list[int] = []
    while unnumbered:
        top = max(weight[x] for x in unnumbered)
        v = min(x for x in unnumbered if weight[x] == top)
        unnumbered.discard(v)
        reached = _mcs_reach(g, v, unnumbered, weight)
        for u in reached:
            weight[u] += 1
            if u not in filled[v]:
                filled[v].add(u)
                filled[u].add(v)
        numbered_rev.append(v)
    return numbered_rev[::-1], filled


def _mcs_reach(g: Graph, v: int, unnumbered: set[int], weight: dict[int, int]) -> set[int]:
    # u is reached if some v..u path has all inner vertices unnumbered with
    # weight < weight(u); compute the minimum bottleneck over such paths
    best: dict[int, int] = {}
    queue: deque[tuple[int, int]] = deque()
    for u in g.neighbors(v):
        if u in unnumbered:
            best[u] = -1
            queue.append((u, -1))
    # bounded label-correcting search; weights are small integers
    while queue:
        x, b = queue.popleft()
        if best.get(x, None) != b:
            continue
        through = max(b, weight[x])
        for y in g.neighbors(x):
            if y in unnumbered and y != v:
                if y not in best or through < best[y]:
                    best[y] = through
                    queue.append((y, through))
    return {u for u, b in best.items() if b < weight[u]}


def minimal_almost_clique_separators(g: Graph, cap: int = DEFAULT_SEPARATOR_CAP) -> list[SeparatorSet]:
    seen: dict[frozenset[int], SeparatorSet] = {}
    for x in g:
        rest = g.remove_vertices([x])
        order, filled = mcs_m(rest)
        pos = {v: i for i, v in enumerate(order)}
        candidates = {frozenset()}
        for y in order:
            candidates.add(frozenset(u for u in filled[y] if pos[u] > pos[y]))
        for c in candidates:
            q = c | {x}
            if q in seen:
                continue
            witness = almost_clique_witness(g, q)
            if witness is None or not is_minimal_separator(g, q):
                continue
            seen[q] = SeparatorSet(q, witness)
            if len(seen) > cap:
                raise SeparatorOverflowError(f"more than {cap} minimal almost clique separators")
    return [seen[q] for q in sorted(seen, key=lambda s: (len(s), sorted(s)))]


def brute_force_almost_clique_separators(g: Graph) -> set[frozenset[int]]:
    """Exhaustive reference enumeration; exponential, for small graphs only."""
    vs = g.vertices
    if len(vs) > 16:
        raise InputError("brute-force enumeration is limited to 16 vertices")
    out = set()
    for mask in range(1, 1 << len(vs)):
        q = frozenset(vs[i] for i in range(len(vs)) if mask >> i & 1)
        if almost_clique_witness(g, q) is not None and is_minimal_separator(g, q):
            out.add(q)
    return out
