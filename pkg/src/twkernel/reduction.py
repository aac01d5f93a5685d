"""Instances, trace steps and outcomes shared by both kernels."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError
from .graph import Edge, Graph, contract_edge
from .modulators import CLASS_TAGS, verify_modulator


class Verdict(enum.Enum):
    YES = "YES"
    NO = "NO"
    REDUCED = "REDUCED"


@dataclass(frozen=True)
class Instance:
    graph: Graph
    k: int
    modulator: frozenset[int]
    class_tag: str

    def __post_init__(self):
        object.__setattr__(self, "modulator", frozenset(self.modulator))
        if self.class_tag not in CLASS_TAGS:
            raise InputError(f"unknown modulator class {self.class_tag!r}")
        if self.k < 0:
            raise InputError("k must be non-negative")
        if not self.modulator <= set(self.graph.vertices):
            raise InputError("modulator contains vertices outside the graph")

    @property
    def ell(self) -> int:
        return len(self.modulator)

    def is_valid(self) -> bool:
        return verify_modulator(self.graph, self.modulator, self.class_tag)


@dataclass(frozen=True)
class TraceStep:
    """One rule application.

    ``action`` is ``add-edges``, ``remove-vertex``, ``contract`` or
    ``decide``.  For contractions ``vertices`` is ``(u, v, keep)``.
    The edge and modulator deltas make a step checkable on replay.
    """

    rule: str
    action: str
    vertices: tuple[int, ...] = ()
    edges_added: tuple[Edge, ...] = ()
    edges_removed: tuple[Edge, ...] = ()
    modulator_added: tuple[int, ...] = ()
    modulator_removed: tuple[int, ...] = ()
    k_delta: int = 0


@dataclass(frozen=True)
class Step:
    """What a rule returns when it fires."""

    trace: TraceStep
    verdict: Verdict
    instance: Instance | None = None


@dataclass
class ReductionOutcome:
    verdict: Verdict
    instance: Instance | None
    trace: list[TraceStep] = field(default_factory=list)

    @property
    def k_prime(self) -> int | None:
        return None if self.instance is None else self.instance.k


def decide(rule: str, verdict: Verdict, vertices: Iterable[int] = ()) -> Step:
    return Step(TraceStep(rule, "decide", tuple(vertices)), verdict)


def _delta(before: Graph, after: Graph) -> tuple[tuple[Edge, ...], tuple[Edge, ...]]:
    b, a = before.edge_set(), after.edge_set()
    return tuple(sorted(a - b)), tuple(sorted(b - a))


def apply_add_edges(inst: Instance, rule: str, edges: Iterable[Edge]) -> Step:
    g2 = inst.graph.add_edges(edges)
    added, removed = _delta(inst.graph, g2)
    new = Instance(g2, inst.k, inst.modulator, inst.class_tag)
    return Step(TraceStep(rule, "add-edges", tuple(sorted({x for e in added for x in e})), added, removed),
                Verdict.REDUCED, new)


def apply_remove_vertex(inst: Instance, rule: str, v: int) -> Step:
    g2 = inst.graph.remove_vertices([v])
    added, removed = _delta(inst.graph, g2)
    mod_removed = (v,) if v in inst.modulator else ()
    new = Instance(g2, inst.k, inst.modulator - {v}, inst.class_tag)
    return Step(TraceStep(rule, "remove-vertex", (v,), added, removed, (), mod_removed), Verdict.REDUCED, new)


def apply_contract(inst: Instance, rule: str, u: int, v: int, keep: int,
                   modulator: frozenset[int]) -> Step:
    g2 = contract_edge(inst.graph, u, v, keep)
    added, removed = _delta(inst.graph, g2)
    new = Instance(g2, inst.k, modulator, inst.class_tag)
    return Step(TraceStep(rule, "contract", (u, v, keep), added, removed,
                          tuple(sorted(modulator - inst.modulator)),
                          tuple(sorted(inst.modulator - modulator))),
                Verdict.REDUCED, new)


def replay(inst: Instance, trace: Iterable[TraceStep]) -> Instance:
    """Re-apply a trace to its original instance, checking every delta."""
    for step in trace:
        g = inst.graph
        if step.action == "decide":
            continue
        if step.action == "add-edges":
            g2 = g.add_edges(step.edges_added)
        elif step.action == "remove-vertex":
            (v,) = step.vertices
            g2 = g.remove_vertices([v])
        elif step.action == "contract":
            u, v, keep = step.vertices
            g2 = contract_edge(g, u, v, keep)
        else:
            raise InputError(f"unknown trace action {step.action!r}")
        added, removed = _delta(g, g2)
        if added != tuple(step.edges_added) or removed != tuple(step.edges_removed):
            raise InputError(f"trace step {step.rule} does not reproduce its edge delta")
        mod = (inst.modulator - set(step.modulator_removed)) | set(step.modulator_added)
        inst = Instance(g2, inst.k + step.k_delta, mod, inst.class_tag)
    return inst
