"""Quartic kernel for treewidth parameterized by a feedback vertex set.

The driver tries rules in this order until none applies:

=====  ==============================================================
4.3    answer yes when k >= |S| + 1
4.5    answer no on an almost simplicial vertex of degree >= k + 2
4.4    contract a low-degree almost simplicial vertex into its special
       neighbor
4.6    degree k + 1 almost simplicial vertex: answer no, or contract
       to a fresh vertex
4.1    join v, w (one in S) with >= k + 1 internally disjoint paths
4.2    complete a minimal almost clique separator with <= 1 vertex
       outside S
4.7    shorten a clique-seeing path that sees a small clique
4.8    drop the middle of a separating 5-vertex clique-seeing path
4.9    answer no on a clique-seeing path with r >= 6k + 6
=====  ==============================================================

Isolated vertices have no special neighbor; they are deleted under the
simplicial-vertex rule id ``3.1`` so reduced instances carry none.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InputError
from .flow import count_disjoint_paths
from .graph import Graph, contract_edge, special_neighbors
from .modulators import FOREST
from .oracles import treewidth_exact
from .reduction import (Instance, ReductionOutcome, Step, Verdict, apply_add_edges,
                        apply_contract, apply_remove_vertex, decide)
from .separators import minimal_almost_clique_separators


@dataclass(frozen=True)
class CliqueSeeingPath:
    vertices: tuple[int, ...]
    seen_clique: frozenset[int]

    @property
    def r(self) -> int:
        return len(self.vertices) - 2

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


@dataclass
class HeuristicState:
    low: int = 0
    contractions: int = 0


def _require_tag(inst: Instance) -> None:
    if inst.class_tag != FOREST:
        raise InputError("feedback vertex set rules need a forest modulator")


# -- almost simplicial vertices -------------------------------------------

def passes_k_plus_one_test(g: Graph, v: int, w: int) -> bool:
    """Every x in N(v) - {w} is adjacent to w or reaches it avoiding N[v] - {x, w}.

    When this holds for a degree k + 1 almost simplicial vertex, contracting
    N[v] gives a clique minor on k + 2 vertices.
    """
    closed = g.closed_neighbors(v)
    for x in sorted(g.neighbors(v) - {w}):
        if g.has_edge(x, w):
            continue
        if not g.connected_avoiding(x, w, closed - {x, w}):
            return False
    return True


def rule_trivial_fvs(inst: Instance) -> Step | None:
    _require_tag(inst)
    if inst.k >= len(inst.modulator) + 1:
        return decide("4.3", Verdict.YES)
    return None


def rule_almost_simplicial(inst: Instance) -> Step | None:
    _require_tag(inst)
    g, k, s = inst.graph, inst.k, inst.modulator
    for v in g:
        if g.degree(v) == 0:
            return apply_remove_vertex(inst, "3.1", v)
    candidates = []
    for v in g:
        sp = special_neighbors(g, v)
        if sp:
            if g.degree(v) >= k + 2:
                return decide("4.5", Verdict.NO, [v])
            candidates.append((v, min(sp)))
    if not candidates:
        return None
    v, w = candidates[0]
    if g.degree(v) <= k:
        mod = (s - {v}) | {w} if v in s else s
        return apply_contract(inst, "4.4", v, w, w, mod)
    if passes_k_plus_one_test(g, v, w):
        return decide("4.6", Verdict.NO, [v, w])
    x = g.fresh_id()
    mod = (s - {v, w}) | {x} if (v in s or w in s) else s
    return apply_contract(inst, "4.6", v, w, x, mod)


# -- separator and path-count rules ---------------------------------------

def rule_disjoint_paths(inst: Instance) -> Step | None:
    _require_tag(inst)
    g, k, s = inst.graph, inst.k, inst.modulator
    for v, w in combinations(g.vertices, 2):
        if not (v in s or w in s) or g.has_edge(v, w):
            continue
        if min(g.degree(v), g.degree(w)) < k + 1:
            continue
        if count_disjoint_paths(g, v, w, k + 1) >= k + 1:
            return apply_add_edges(inst, "4.1", [(v, w)])
    return None


def rule_almost_clique_separator(inst: Instance) -> Step | None:
    _require_tag(inst)
    g, s = inst.graph, inst.modulator
    for sep in minimal_almost_clique_separators(g):
        q = sep.vertices
        if len(q - s) > 1:
            continue
        missing = g.nonadjacent_pairs(q)
        if missing:
            return apply_add_edges(inst, "4.2", missing)
    return None


# -- clique-seeing paths --------------------------------------------------

def find_clique_seeing_paths(inst: Instance) -> list[CliqueSeeingPath]:
    """Clique-seeing paths inside the forest G - S that see a clique in S.

    Inner vertices of such a path have exactly two forest neighbors, so
    every path is a contiguous piece of a maximal run of forest vertices
    of degree two, extended by one vertex at each end.  Both orientations
    are returned.
    """
    _require_tag(inst)
    g, s = inst.graph, inst.modulator
    forest_nb = {v: g.neighbors(v) - s for v in g if v not in s}
    deg2 = {v for v, nb in forest_nb.items() if len(nb) == 2}
    out: list[CliqueSeeingPath] = []
    seen: set[int] = set()
    for start in sorted(deg2):
        if start in seen:
            continue
        run = _degree_two_run(start, forest_nb, deg2)
        seen.update(run[1:-1])
        out.extend(_paths_in_run(g, s, run))
    return out


def _degree_two_run(start: int, forest_nb, deg2) -> list[int]:
    # walk both ways from start; returns [end, inner..., end]
    sides = []
    for first in sorted(forest_nb[start]):
        chain, prev, cur = [], start, first
        while cur in deg2 and cur != start:
            chain.append(cur)
            prev, cur = cur, next(iter(forest_nb[cur] - {prev}))
        chain.append(cur)
        sides.append(chain)
    left, right = sides
    return left[::-1] + [start] + right


def _paths_in_run(g: Graph, s: frozenset[int], run: list[int]) -> list[CliqueSeeingPath]:
    out = []
    inner = len(run) - 2
    for i in range(1, inner + 1):
        seen: set[int] = set()
        for j in range(i, inner + 1):
            seen |= g.neighbors(run[j]) & s
            if not g.is_clique(sorted(seen)):
                break
            x = frozenset(seen)
            path = tuple(run[i - 1:j + 2])
            out.append(CliqueSeeingPath(path, x))
            out.append(CliqueSeeingPath(path[::-1], x))
    return out


def is_clique_seeing(g: Graph, path, x) -> bool:
    """Direct check of both conditions on a candidate path and clique."""
    path = tuple(path)
    if len(path) < 3 or len(set(path)) != len(path):
        return False
    if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
        return False
    on_path = set(path)
    union: set[int] = set()
    for v in path[1:-1]:
        union |= g.neighbors(v)
    if frozenset(union - on_path) != frozenset(x) or not g.is_clique(sorted(x)):
        return False
    for i in range(1, len(path) - 1):
        if not g.neighbors(path[i]) <= {path[i - 1], path[i + 1]} | set(x):
            return False
    return True


def _seen_by(g: Graph, path: tuple[int, ...]) -> frozenset[int]:
    union: set[int] = set()
    for v in path[1:-1]:
        union |= g.neighbors(v)
    return frozenset(union - set(path))


def rule_path_contract(inst: Instance, p: CliqueSeeingPath) -> Step | None:
    _require_tag(inst)
    g, x = inst.graph, p.seen_clique
    if set(p.vertices) & inst.modulator or not x <= inst.modulator:
        return None
    if len(x) > inst.k - 2:
        return None
    inner = p.interior
    earlier: set[int] = set()
    for v in inner[:-1]:
        earlier |= g.neighbors(v) & x
    last, end = inner[-1], p.vertices[-1]
    if g.neighbors(last) & x <= earlier:
        return apply_contract(inst, "4.7", last, end, end, inst.modulator)
    return None


def rule_path_remove(inst: Instance, p: CliqueSeeingPath) -> Step | None:
    """Remove the middle vertex of a separating 5-vertex clique-seeing path.

    Longer paths are scanned window by window, recomputing the seen clique
    of each 5-vertex window.  Assumes the almost clique separator rule is
    exhausted, which the driver guarantees.
    """
    _require_tag(inst)
    g, s = inst.graph, inst.modulator
    if set(p.vertices) & s:
        return None
    for i in range(len(p.vertices) - 4):
        window = p.vertices[i:i + 5]
        x = _seen_by(g, window)
        if not x <= s or not g.is_clique(sorted(x)):
            continue
        v0, v1, v2, v3, v4 = window
        middle = {v1, v2, v3} | x
        if g.connected_avoiding(v0, v4, middle):
            continue
        if not small_treewidth_at_most(g.induced(middle), inst.k, prefer=(v1, v3)):
            return decide("4.8", Verdict.NO, window)
        return apply_remove_vertex(inst, "4.8", v2)
    return None


def rule_cutoff(inst: Instance, p: CliqueSeeingPath) -> Step | None:
    _require_tag(inst)
    if p.r >= 6 * inst.k + 6:
        return decide("4.9", Verdict.NO, p.vertices)
    return None


def small_treewidth_at_most(h: Graph, k: int, prefer=()) -> bool:
    """Decide tw(h) <= k by almost simplicial reductions down to a clique.

    Built for the graphs induced by three consecutive path vertices plus
    their seen clique, where the two outer path vertices are almost
    simplicial; ``prefer`` lists the vertices to reduce first.
    """
    queue = [v for v in prefer if v in h]
    while not h.is_clique(h.vertices):
        v = next((u for u in queue if u in h and special_neighbors(h, u)), None)
        if v is None:
            v = next((u for u in h if special_neighbors(h, u)), None)
        if v is None:
            return treewidth_exact(h) <= k
        w = min(special_neighbors(h, v))
        d = h.degree(v)
        if d >= k + 2:
            return False
        if d == k + 1:
            if passes_k_plus_one_test(h, v, w):
                return False
            h = contract_edge(h, v, w, h.fresh_id())
        else:
            h = contract_edge(h, v, w, w)
    return h.n - 1 <= k


# -- driver ---------------------------------------------------------------

def _path_rules(inst: Instance) -> Step | None:
    paths = find_clique_seeing_paths(inst)
    for p in paths:
        step = rule_path_contract(inst, p)
        if step is not None:
            return step
    for p in paths:
        if p.r == 3:
            step = rule_path_remove(inst, p)
            if step is not None:
                return step
    for p in paths:
        step = rule_cutoff(inst, p)
        if step is not None:
            return step
    return None


RULES = (rule_trivial_fvs, rule_almost_simplicial, rule_disjoint_paths,
         rule_almost_clique_separator, _path_rules)


def kernelize_fvs(inst: Instance) -> ReductionOutcome:
    _require_tag(inst)
    if not inst.is_valid():
        raise InputError("modulator is not a feedback vertex set of the graph")
    trace = []
    while True:
        for rule in RULES:
            step = rule(inst)
            if step is not None:
                break
        else:
            return ReductionOutcome(Verdict.REDUCED, inst, trace)
        trace.append(step.trace)
        if step.verdict is not Verdict.REDUCED:
            return ReductionOutcome(step.verdict, None, trace)
        assert step.instance.is_valid(), f"rule {step.trace.rule} broke the forest modulator"
        inst = step.instance


def heuristic_low_mode(g: Graph) -> tuple[Graph, HeuristicState]:
    """Contract every almost simplicial vertex, tracking a treewidth lower bound.

    The treewidth of ``g`` equals max(state.low, treewidth of the result).
    """
    state = HeuristicState()
    while True:
        found = None
        for v in g:
            sp = special_neighbors(g, v)
            if sp:
                found = (v, min(sp))
                break
        if found is None:
            return g, state
        v, w = found
        d = g.degree(v)
        if d - 1 > state.low:
            state.low = d - 1
        if d - 1 == state.low and passes_k_plus_one_test(g, v, w):
            state.low += 1
        g = contract_edge(g, v, w, w)
        state.contractions += 1
