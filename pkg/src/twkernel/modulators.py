"""Approximate modulators (vertex cover, feedback vertex set) and checks."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .graph import Graph

INDEPENDENT_SET = "independent-set"
FOREST = "forest"
CLASS_TAGS = (INDEPENDENT_SET, FOREST)


def approx_vertex_cover(g: Graph) -> frozenset[int]:
    """Both endpoints of a greedy maximal matching."""
    cover: set[int] = set()
    for u, v in g.edges():
        if u not in cover and v not in cover:
            cover.update((u, v))
    return frozenset(cover)


def verify_modulator(g: Graph, s: Iterable[int], tag: str) -> bool:
    s = set(s)
    if not s <= set(g.vertices):
        return False
    rest = g.remove_vertices(s)
    if tag == INDEPENDENT_SET:
        return rest.m == 0
    if tag == FOREST:
        return rest.is_forest()
    raise ValueError(f"unknown modulator class {tag!r}")


def approx_feedback_vertex_set(g: Graph) -> frozenset[int]:
    """Local-ratio 2-approximation of Bafna, Berman and Fujito.

    Repeatedly strips vertices of degree at most one; then either lowers
    the weights along a semidisjoint cycle (all but at most one vertex of
    degree two) or lowers every weight proportionally to degree - 1.
    Vertices reaching weight zero join the solution, and a final
    reverse-order pass drops the ones that turned out to be redundant.
    """
    adj = {v: set(g.neighbors(v)) for v in g}
    weight = {v: Fraction(1) for v in g}
    picked: list[int] = []
    _strip(adj)
    while adj:
        cycle = _semidisjoint_cycle(adj)
        if cycle is not None:
            gamma = min(weight[v] for v in cycle)
            for v in cycle:
                weight[v] -= gamma
        else:
            gamma = min(weight[v] / (len(adj[v]) - 1) for v in adj)
            for v in adj:
                weight[v] -= gamma * (len(adj[v]) - 1)
        zero = sorted(v for v in adj if weight[v] == 0)
        for v in zero:
            picked.append(v)
            for u in adj.pop(v):
                adj[u].discard(v)
        _strip(adj)

    solution = set(picked)
    for v in reversed(picked):
        trial = solution - {v}
        if g.remove_vertices(trial).is_forest():
            solution = trial
    return frozenset(solution)


def _strip(adj: dict[int, set[int]]) -> None:
    queue = [v for v, nb in adj.items() if len(nb) <= 1]
    while queue:
        v = queue.pop()
        if v not in adj or len(adj[v]) > 1:
            continue
        for u in adj.pop(v):
            adj[u].discard(v)
            if len(adj[u]) <= 1:
                queue.append(u)


def _semidisjoint_cycle(adj: dict[int, set[int]]) -> list[int] | None:
    deg2 = {v for v, nb in adj.items() if len(nb) == 2}
    seen: set[int] = set()
    for s in sorted(deg2):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in deg2 and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        outside = [(v, u) for v in comp for u in adj[v] if u not in comp]
        if not outside:
            return sorted(comp)
        # a chain of degree-two vertices hanging off a single vertex
        hubs = {u for _, u in outside}
        if len(outside) == 2 and len(hubs) == 1:
            return sorted(comp | hubs)
    return None
