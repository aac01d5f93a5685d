"""Internally vertex-disjoint path counting by unit-capacity augmentation."""
from __future__ import annotations

from collections import deque

from .errors import InputError
from .graph import Graph


def count_disjoint_paths(g: Graph, u: int, v: int, cap: int) -> int:
    """Return min(cap, number of internally vertex-disjoint u-v paths).

    A direct edge {u, v} counts as one path.  Each inner vertex x is split
    into (x, 0) -> (x, 1) with capacity one; the search stops as soon as
    ``cap`` augmenting paths have been found.
    """
    if u == v:
        raise InputError("endpoints must differ")
    g.neighbors(u)
    g.neighbors(v)
    if cap < 1:
        raise InputError("cap must be positive")

    found = 0
    if g.has_edge(u, v):
        found = 1
        if found >= cap:
            return found

    # residual capacities on the split network; absent key means 0
    residual: dict[tuple, dict[tuple, int]] = {}

    def arc(a, b, c):
        residual.setdefault(a, {})[b] = residual.get(a, {}).get(b, 0) + c
        residual.setdefault(b, {}).setdefault(a, 0)

    source, sink = (u, 1), (v, 0)
    for x in g:
        if x not in (u, v):
            arc((x, 0), (x, 1), 1)
    for x in g:
        for y in g.neighbors(x):
            if {x, y} == {u, v}:
                continue
            # out-copy of x feeds in-copy of y
            arc((x, 1), (y, 0), 1)

    while found < cap:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, c in residual.get(a, {}).items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            residual[a][b] -= 1
            residual[b][a] += 1
            b = a
        found += 1
    return found
