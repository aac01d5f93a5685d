"""Cubic kernel for treewidth parameterized by a vertex cover.

Rules, in the order the driver tries them:

* ``3.4`` answer yes when k >= |S|;
* ``3.2`` answer no when some simplicial vertex has degree > k;
* ``3.1`` delete a simplicial vertex of degree <= k;
* ``3.3`` join two nonadjacent vertices, one of them in S, that share at
  least k + 1 neighbors.

When several vertices qualify the lowest id (or lexicographically lowest
pair) wins, so traces are reproducible.
"""
from __future__ import annotations

from itertools import combinations

from .errors import InputError
from .graph import is_simplicial
from .modulators import INDEPENDENT_SET
from .reduction import (Instance, ReductionOutcome, Step, Verdict, apply_add_edges,
                        apply_remove_vertex, decide)


def _require_tag(inst: Instance) -> None:
    if inst.class_tag != INDEPENDENT_SET:
        raise InputError("vertex cover rules need an independent-set modulator")


def rule_trivial_vc(inst: Instance) -> Step | None:
    _require_tag(inst)
    if inst.k >= len(inst.modulator):
        return decide("3.4", Verdict.YES)
    return None


def rule_simplicial(inst: Instance) -> Step | None:
    _require_tag(inst)
    g = inst.graph
    simplicial = [v for v in g if is_simplicial(g, v)]
    for v in simplicial:
        if g.degree(v) > inst.k:
            return decide("3.2", Verdict.NO, [v])
    if simplicial:
        return apply_remove_vertex(inst, "3.1", simplicial[0])
    return None


def rule_common_neighbors(inst: Instance) -> Step | None:
    _require_tag(inst)
    g = inst.graph
    s = inst.modulator
    for v, w in combinations(g.vertices, 2):
        if (v in s or w in s) and not g.has_edge(v, w):
            if len(g.neighbors(v) & g.neighbors(w)) >= inst.k + 1:
                return apply_add_edges(inst, "3.3", [(v, w)])
    return None


RULES = (rule_trivial_vc, rule_simplicial, rule_common_neighbors)


def kernelize_vc(inst: Instance) -> ReductionOutcome:
    _require_tag(inst)
    if not inst.is_valid():
        raise InputError("modulator is not a vertex cover of the graph")
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
        inst = step.instance


def size_bound(ell: int, k: int) -> int:
    """|S| + k * C(|S|, 2): the vertex bound a reduced instance satisfies."""
    return ell + k * ell * (ell - 1) // 2
