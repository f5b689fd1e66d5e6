"""Decomposition of a graph into line graphs plus a totally looped graph, and
the corner construction that tracks an idempotent's class through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ClassVanished, EmptyGraph, EmptySet, UnknownVertex
from .graph import Graph, disjoint_union, is_totally_looped
from .monoid import MonoidElement, class_map_under_move
from .moves import MoveRecord, collapse, line_graph, sf_reduce, source_eliminate
from .projective import HairExtension, NormalizedClass, ProjectiveClass, as_projective, end_graph

ORDERS = ("smallest", "largest")


@dataclass(frozen=True)
class DecompositionReport:
    k: int
    removed_sinks: tuple[str, ...]
    F: Graph
    trace: tuple[MoveRecord, ...]
    trivial: bool = False  # F is the E_triv stand-in for an emptied graph

    def to_json(self) -> dict:
        from .serialize import graph_to_dict

        return {
            "k": self.k,
            "removed_sinks": list(self.removed_sinks),
            "trivial": self.trivial,
            "F": graph_to_dict(self.F),
            "trace": [_move_json(m) for m in self.trace],
        }


def _move_json(m: MoveRecord) -> dict:
    return {"kind": m.kind, "vertex": m.vertex, "detail": m.detail}


def _collapsible(g: Graph) -> list[str]:
    return sorted(v for v in g.vertices if g.is_regular(v) and not g.loops_at(v))


def decompose(g: Graph, order: str = "smallest") -> DecompositionReport:
    """``sf_reduce`` followed by collapses until the graph is totally looped.

    ``order`` picks which collapsible vertex goes next; the default takes the
    lexicographically smallest label.
    """
    if not g.vertices:
        raise EmptyGraph("the graph has no vertices")
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    sf = sf_reduce(g)
    trace = list(sf.trace)
    F = sf.sf
    if not sf.trivial:
        while True:
            cands = _collapsible(F)
            if not cands:
                break
            v = cands[0] if order == "smallest" else cands[-1]
            trace.append(MoveRecord("Collapse", v, ",".join(e.id for e in F.out_edges(v))))
            F = collapse(F, v)
    return DecompositionReport(len(sf.removed_isolated), sf.removed_isolated, F, tuple(trace), sf.trivial)


@dataclass(frozen=True)
class TraceStep:
    move: MoveRecord
    before: MonoidElement
    after: MonoidElement
    graph_size: tuple[int, int]  # |V|, |E| after the move


@dataclass(frozen=True)
class CornerReport:
    line_sizes: tuple[int, ...]
    T: tuple[str, ...]
    G: Graph | None
    output: Graph
    trace: tuple[TraceStep, ...]
    start: ProjectiveClass
    residual: MonoidElement
    normalized: NormalizedClass | None
    decomposition: DecompositionReport

    def to_json(self) -> dict:
        from .serialize import graph_to_dict

        return {
            "class": str(self.start),
            "line_sizes": list(self.line_sizes),
            "T": list(self.T),
            "mults": None if self.normalized is None else self.normalized.to_json()["mults"],
            "G": None if self.G is None else graph_to_dict(self.G),
            "output": graph_to_dict(self.output),
            "k": self.decomposition.k,
            "F": graph_to_dict(self.decomposition.F),
            "residual": str(self.residual),
            "trace": [
                dict(_move_json(s.move), before=str(s.before), after=str(s.after)) for s in self.trace
            ],
        }

    def move_log(self) -> str:
        lines = []
        for i, s in enumerate(self.trace, start=1):
            d = f" [{s.move.detail}]" if s.move.detail else ""
            lines.append(f"{i:3d} {s.move.kind} {s.move.vertex}{d}: {s.before or '0'} -> {s.after or '0'}")
        return "\n".join(lines)


def _apply_move(g: Graph, move: MoveRecord) -> Graph:
    if move.kind == "Collapse":
        return collapse(g, move.vertex)
    return source_eliminate(g, move.vertex)


def corner_graph(g: Graph, eps, order: str = "smallest") -> CornerReport:
    """Graph whose Leavitt path algebra is the corner of ``L(g)`` cut by an idempotent of class ``eps``."""
    if not g.vertices:
        raise EmptyGraph("the graph has no vertices")
    eps = as_projective(eps)
    for v in eps.support():
        if v not in g.vertex_set:
            raise UnknownVertex(f"unknown vertex {v!r}")
    rep = decompose(g, order)
    cls: MonoidElement = eps
    cur = g
    lines: list[int] = []
    steps: list[TraceStep] = []
    for move in rep.trace:
        before = cls
        if move.kind == "IsolatedRemoval" and cls[move.vertex] > 0:
            lines.append(cls[move.vertex])
        cls = class_map_under_move(move, cur, cls)
        cur = _apply_move(cur, move)
        steps.append(TraceStep(move, before, cls, (len(cur.vertices), len(cur.edges))))
    if rep.trivial:
        residual = MonoidElement()
    else:
        residual = cls
    parts = [line_graph(n) for n in lines]
    T: tuple[str, ...] = ()
    G = None
    normalized = None
    if residual:
        eg = end_graph(HairExtension.trivial(rep.F), residual)
        G, T, normalized = eg.G, eg.normalized.T, eg.normalized
        parts.append(G)
    elif not lines:
        raise ClassVanished("the class vanished without producing any component")
    return CornerReport(
        tuple(lines), T, G, disjoint_union(parts), tuple(steps), eps, residual, normalized, rep
    )


def vertex_sum_class(g: Graph, S: Iterable[str]) -> ProjectiveClass:
    """Class of ``sum_{v in S} v``."""
    S = set(S)
    if not S:
        raise EmptySet("the vertex set is empty")
    for v in S:
        g.check_vertex(v)
    return ProjectiveClass({v: 1 for v in S})


def identity_class(g: Graph) -> ProjectiveClass:
    return vertex_sum_class(g, g.vertices)


def check_totally_looped(rep: DecompositionReport) -> bool:
    return is_totally_looped(rep.F)
