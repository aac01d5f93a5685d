"""Readers and writers for the plain-text exchange formats.

Graph files follow the PACE ``.gr`` layout with 1-based ids::

    c optional comments
    p tw <n> <m>
    <u> <v>            (m lines)

The weighted variant uses ``p wtw <n> <m>`` and lists ``w <v> <weight>``
for every vertex before the edges.  Internally vertex ``i`` of a file is
vertex ``i - 1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from .errors import ParseError
from .graph import Graph, WeightedGraph, norm_edge
from .oracles import TreeDecomposition
from .reduction import Instance, ReductionOutcome, TraceStep

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GrDocument:
    """A parsed graph file; edges and weights use file (1-based) ids."""

    n: int
    m: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(norm_edge(u, v) for u, v in self.edges)))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(sorted(self.weights)))

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def graph(self) -> Graph:
        return Graph(range(self.n), [(u - 1, v - 1) for u, v in self.edges])

    def weighted_graph(self) -> WeightedGraph:
        """The weighted graph; unweighted documents get unit weights."""
        g = self.graph()
        if self.weights is None:
            return WeightedGraph.unit(g)
        return WeightedGraph(g, {v - 1: w for v, w in self.weights})

    @classmethod
    def from_graph(cls, g: Graph, weights=None) -> "GrDocument":
        """Document for ``g``, whose vertices must be exactly 0..n-1."""
        if list(g.vertices) != list(range(g.n)):
            raise ValueError("graph ids must be 0..n-1; relabel first")
        ws = None if weights is None else tuple((v + 1, weights[v]) for v in g)
        return cls(g.n, g.m, tuple((u + 1, v + 1) for u, v in g.edges()), ws)

    @classmethod
    def from_weighted(cls, wg: WeightedGraph) -> "GrDocument":
        return cls.from_graph(wg.graph, wg.weight)


def compact(g: Graph) -> tuple[Graph, list[int]]:
    """Relabel onto 0..n-1 keeping order; also return new -> old ids."""
    old = list(g.vertices)
    return g.relabel({v: i for i, v in enumerate(old)}), old


def _ints(parts: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        yield lineno, line.split()


def parse_gr(text: str) -> GrDocument:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 'p' header line")
    lineno, head = lines[0]
    if len(head) != 4 or head[0] != "p" or head[1] not in ("tw", "wtw"):
        raise ParseError("header must be 'p tw <n> <m>' or 'p wtw <n> <m>'", lineno)
    n, m = _ints(head[2:], lineno)
    if n < 0 or m < 0:
        raise ParseError("negative counts in header", lineno)
    body = lines[1:]
    weights = None
    if head[1] == "wtw":
        wlines, body = body[:n], body[n:]
        weights = {}
        for lineno, parts in wlines:
            if len(parts) != 3 or parts[0] != "w":
                raise ParseError("expected 'w <v> <weight>'", lineno)
            v, w = _ints(parts[1:], lineno)
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} is outside 1..{n}", lineno)
            if w < 1:
                raise ParseError(f"weight of vertex {v} must be positive", lineno)
            if v in weights:
                raise ParseError(f"vertex {v} has two weight lines", lineno)
            weights[v] = w
        if len(weights) != n:
            raise ParseError(f"expected {n} weight lines, found {len(weights)}")
    seen = set()
    for lineno, parts in body:
        if len(parts) != 2:
            raise ParseError(f"unexpected line {' '.join(parts)!r}", lineno)
        u, v = _ints(parts, lineno)
        for x in (u, v):
            if not 1 <= x <= n:
                raise ParseError(f"vertex {x} is outside 1..{n}", lineno)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", lineno)
        e = norm_edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add(e)
    if len(seen) != m:
        raise ParseError(f"header announces {m} edges, found {len(seen)}")
    return GrDocument(n, m, tuple(seen), None if weights is None else tuple(weights.items()))


def write_gr(doc: GrDocument) -> str:
    out = [f"p {'wtw' if doc.weighted else 'tw'} {doc.n} {doc.m}"]
    if doc.weights is not None:
        out.extend(f"w {v} {w}" for v, w in doc.weights)
    out.extend(f"{u} {v}" for u, v in doc.edges)
    return "\n".join(out) + "\n"


# -- tree decompositions -----------------------------------------------------

def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse a ``.td`` file into a decomposition over 0-based vertices.

    Returns the decomposition (bag ids kept as in the file) and the vertex
    count announced by the header.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 's td' header line")
    lineno, head = lines[0]
    if len(head) != 5 or head[:2] != ["s", "td"]:
        raise ParseError("header must be 's td <bags> <width+1> <n>'", lineno)
    nbags, size, n = _ints(head[2:], lineno)
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, parts in lines[1:]:
        if parts[0] == "b":
            if len(parts) < 2:
                raise ParseError("bag line needs an id", lineno)
            ids = _ints(parts[1:], lineno)
            b, members = ids[0], ids[1:]
            if not 1 <= b <= nbags:
                raise ParseError(f"bag id {b} is outside 1..{nbags}", lineno)
            if b in bags:
                raise ParseError(f"bag {b} is defined twice", lineno)
            for v in members:
                if not 1 <= v <= n:
                    raise ParseError(f"vertex {v} is outside 1..{n}", lineno)
            bags[b] = frozenset(v - 1 for v in members)
        elif len(parts) == 2:
            a, b = _ints(parts, lineno)
            for x in (a, b):
                if not 1 <= x <= nbags:
                    raise ParseError(f"bag id {x} is outside 1..{nbags}", lineno)
            edges.append((a, b))
        else:
            raise ParseError(f"unexpected line {' '.join(parts)!r}", lineno)
    if len(bags) != nbags:
        raise ParseError(f"header announces {nbags} bags, found {len(bags)}")
    largest = max((len(b) for b in bags.values()), default=0)
    if largest != size:
        raise ParseError(f"header announces largest bag {size}, found {largest}")
    return TreeDecomposition(bags, tuple(edges)), n


def write_td(td: TreeDecomposition, n: int) -> str:
    """Serialize with bags renumbered 1..B in sorted order of their ids."""
    ids = {x: i + 1 for i, x in enumerate(sorted(td.bags))}
    largest = max((len(b) for b in td.bags.values()), default=0)
    out = [f"s td {len(ids)} {largest} {n}"]
    for x in sorted(td.bags):
        out.append(" ".join(["b", str(ids[x])] + [str(v + 1) for v in sorted(td.bags[x])]))
    for a, b in td.edges:
        out.append(f"{ids[a]} {ids[b]}")
    return "\n".join(out) + "\n"


# -- modulators --------------------------------------------------------------

def parse_modulator(text: str, n: int) -> frozenset[int]:
    """One 1-based vertex id per line; returns 0-based ids."""
    out = set()
    for lineno, parts in _content_lines(text):
        if len(parts) != 1:
            raise ParseError("expected one vertex id per line", lineno)
        (v,) = _ints(parts, lineno)
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} is outside 1..{n}", lineno)
        out.add(v - 1)
    return frozenset(out)


def write_modulator(s: Iterable[int]) -> str:
    return "".join(f"{v + 1}\n" for v in sorted(s))


# -- reduction reports ---------------------------------------------------------

def _plus1(xs) -> list:
    return [x + 1 for x in xs]


def _summary(inst: Instance) -> dict:
    return {"n": inst.graph.n, "m": inst.graph.m, "modulator_size": inst.ell, "k": inst.k}


def trace_to_json(step: TraceStep) -> dict:
    return {
        "rule": step.rule,
        "action": step.action,
        "vertices": _plus1(step.vertices),
        "edges_added": [_plus1(e) for e in step.edges_added],
        "edges_removed": [_plus1(e) for e in step.edges_removed],
        "modulator_added": _plus1(step.modulator_added),
        "modulator_removed": _plus1(step.modulator_removed),
        "k_delta": step.k_delta,
    }


def trace_from_json(entry: dict) -> TraceStep:
    def minus1(xs):
        return tuple(x - 1 for x in xs)

    return TraceStep(entry["rule"], entry["action"], minus1(entry["vertices"]),
                     tuple(minus1(e) for e in entry["edges_added"]),
                     tuple(minus1(e) for e in entry["edges_removed"]),
                     minus1(entry["modulator_added"]), minus1(entry["modulator_removed"]),
                     entry["k_delta"])


def build_report(mode: str, inst: Instance, outcome: ReductionOutcome, output: Instance,
                 vertex_map: Sequence[int], wall_time: float, modulator_source: str) -> dict:
    """Report for one kernelization run.

    ``output`` is the instance written to disk (the reduced instance, or
    the constant gadget for a decided run) and ``vertex_map[i]`` is the
    input vertex behind output vertex i (``None`` for gadget vertices).
    """
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "mode": mode,
        "input": dict(_summary(inst), modulator_source=modulator_source),
        "verdict": outcome.verdict.value,
        "trace": [trace_to_json(s) for s in outcome.trace],
        "output": dict(_summary(output),
                       vertex_map=[None if v is None else v + 1 for v in vertex_map]),
        "wall_time_seconds": round(wall_time, 6),
    }


def report_schema() -> dict:
    text = resources.files("twkernel").joinpath("schemas/reduction-report.schema.json").read_text()
    return json.loads(text)
