"""Finite directed multigraphs and the vertex/subset predicates used throughout.

Vertices and edges are plain string labels.  A :class:`Graph` is an immutable
value; every function here is pure.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import networkx as nx

from .errors import InvalidGraph, NotHereditary, NotSubgraph, UnknownVertex

_BAD_VERTEX = re.compile(r"[\s,:]")


class Edge(NamedTuple):
    id: str
    src: str
    dst: str


class VertexClass(NamedTuple):
    sink: bool
    source: bool
    isolated: bool
    regular: bool
    base_of_loop: bool


@dataclass(frozen=True, eq=False)
class Graph:
    """A finite directed multigraph ``E = (E^0, E^1, s, r)``.

    Equality is structural: same vertex labels and same ``(id, src, dst)``
    triples, irrespective of listing order.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str) or not v or _BAD_VERTEX.search(v):
                raise InvalidGraph(f"bad vertex label {v!r}")
            if v in seen:
                raise InvalidGraph(f"duplicate vertex {v!r}")
            seen.add(v)
        ids = set()
        for e in self.edges:
            if not isinstance(e.id, str) or not e.id:
                raise InvalidGraph(f"bad edge id {e.id!r}")
            if e.id in ids:
                raise InvalidGraph(f"duplicate edge id {e.id!r}")
            ids.add(e.id)
            if e.src not in seen or e.dst not in seen:
                raise InvalidGraph(f"edge {e.id!r} has an endpoint outside the vertex set")

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _out(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.dst].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def edge(self, eid: str) -> Edge:
        return self._edge_map[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._edge_map

    def check_vertex(self, v: str) -> None:
        if v not in self.vertex_set:
            raise UnknownVertex(f"unknown vertex {v!r}")

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        """``s^{-1}(v)`` in listing order."""
        self.check_vertex(v)
        return self._out[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        """``r^{-1}(v)`` in listing order."""
        self.check_vertex(v)
        return self._in[v]

    def is_sink(self, v: str) -> bool:
        return not self.out_edges(v)

    def is_source(self, v: str) -> bool:
        return not self.in_edges(v)

    def is_regular(self, v: str) -> bool:
        return bool(self.out_edges(v))

    def loops_at(self, v: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.out_edges(v) if e.dst == v)

    def successors(self, v: str) -> list[str]:
        return [e.dst for e in self.out_edges(v)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if self is other:
            return True
        return self.vertex_set == other.vertex_set and self.edge_set == other.edge_set

    def __hash__(self):
        return hash((self.vertex_set, self.edge_set))

    def __repr__(self):
        es = ", ".join(f"{e.id}:{e.src}->{e.dst}" for e in self.edges)
        return f"Graph(vertices={list(self.vertices)}, edges=[{es}])"

    def to_networkx(self) -> nx.MultiDiGraph:
        h = nx.MultiDiGraph()
        h.add_nodes_from(self.vertices)
        for e in self.edges:
            h.add_edge(e.src, e.dst, key=e.id)
        return h


E_TRIV = Graph(("v",))


def classify_vertex(g: Graph, v: str) -> VertexClass:
    sink = g.is_sink(v)
    source = g.is_source(v)
    return VertexClass(
        sink=sink,
        source=source,
        isolated=sink and source,
        regular=not sink,
        base_of_loop=bool(g.loops_at(v)),
    )


def _check_subset(g: Graph, S: Iterable[str]) -> set[str]:
    S = set(S)
    for v in S:
        g.check_vertex(v)
    return S


def hereditary_closure(g: Graph, S: Iterable[str]) -> frozenset[str]:
    """All vertices reachable from ``S`` (including ``S`` itself)."""
    seen = _check_subset(g, S)
    queue = deque(sorted(seen))
    while queue:
        v = queue.popleft()
        for w in g.successors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def is_hereditary(g: Graph, S: Iterable[str]) -> bool:
    S = _check_subset(g, S)
    return all(w in S for v in S for w in g.successors(v))


def is_saturated(g: Graph, S: Iterable[str]) -> bool:
    S = _check_subset(g, S)
    for v in g.vertices:
        if v in S or g.is_sink(v):
            continue
        if all(w in S for w in g.successors(v)):
            return False
    return True


def subset_properties(g: Graph, S: Iterable[str]) -> dict[str, bool]:
    S = _check_subset(g, S)
    return {"hereditary": is_hereditary(g, S), "saturated": is_saturated(g, S)}


def is_totally_looped(g: Graph) -> bool:
    return all(g.is_sink(v) or g.loops_at(v) for v in g.vertices)


def is_acyclic(g: Graph) -> bool:
    return nx.is_directed_acyclic_graph(g.to_networkx())


def restriction(g: Graph, H: Iterable[str]) -> Graph:
    """The restriction graph ``E_H``; ``H`` must be hereditary."""
    H = _check_subset(g, H)
    if not is_hereditary(g, H):
        raise NotHereditary(f"{sorted(H)} is not hereditary")
    return Graph(
        tuple(v for v in g.vertices if v in H),
        tuple(e for e in g.edges if e.src in H),
    )


def disjoint_union(parts: Iterable[Graph]) -> Graph:
    """Tagged union; labels of part ``i`` become ``"<i>.<label>"``."""
    vertices: list[str] = []
    edges: list[Edge] = []
    for i, part in enumerate(parts):
        vertices.extend(f"{i}.{v}" for v in part.vertices)
        edges.extend(Edge(f"{i}.{e.id}", f"{i}.{e.src}", f"{i}.{e.dst}") for e in part.edges)
    return Graph(tuple(vertices), tuple(edges))


def is_complete_subgraph(g: Graph, sub: Graph) -> bool:
    if not sub.vertex_set <= g.vertex_set:
        raise NotSubgraph("vertex set not contained in the ambient graph")
    for e in sub.edges:
        if not g.has_edge(e.id) or g.edge(e.id) != e:
            raise NotSubgraph(f"edge {e.id!r} is not an edge of the ambient graph")
    for v in sub.vertices:
        emitted = sub.out_edges(v)
        if emitted and set(emitted) != set(g.out_edges(v)):
            return False
    return True


def shortest_simple_path(g: Graph, v: str, w: str) -> list[Edge] | None:
    """Minimal-length path from ``v`` to ``w``; ties go to the smallest edge-id sequence.

    Returns ``[]`` when ``v == w`` and ``None`` when ``w`` is unreachable.
    """
    g.check_vertex(v)
    g.check_vertex(w)
    if v == w:
        return []
    best: dict[str, tuple[Edge, ...]] = {v: ()}
    layer = [v]
    while layer:
        candidates: dict[str, tuple[Edge, ...]] = {}
        for u in layer:
            for e in g.out_edges(u):
                if e.dst in best:
                    continue
                path = best[u] + (e,)
                old = candidates.get(e.dst)
                if old is None or [x.id for x in path] < [x.id for x in old]:
                    candidates[e.dst] = path
        if w in candidates:
            return list(candidates[w])
        best.update(candidates)
        layer = sorted(candidates)
    return None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Graph isomorphism of multigraphs, ignoring labels."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def sinks(g: Graph) -> list[str]:
    return [v for v in g.vertices if g.is_sink(v)]


def sources(g: Graph) -> list[str]:
    return [v for v in g.vertices if g.is_source(v)]
