"""Graph-to-graph moves: source elimination, Move (R), collapse, in/out-splits,
hair extensions and line graphs.

Derived labels are deterministic:

* composite edges ``"[<e><f>]"`` (Move (R), collapse);
* in-split copies ``"<v>_<j>"`` and ``"<e>#<j>"``;
* out-split copies ``"<v>^<j>"`` and ``"<e>^<j>"``;
* hair strands ``"<v>^<j>"`` with edges ``"e_<v>^<j>"``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BadPartition,
    BadSpec,
    InvalidGraph,
    LoopAtVertex,
    MoveRNotApplicable,
    NotASource,
    SinkVertex,
    SourceVertex,
    VertexIsSink,
)
from .graph import E_TRIV, Edge, Graph

MOVE_KINDS = ("SourceElim", "IsolatedRemoval", "MoveR", "Collapse", "InSplit", "OutSplit")


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    vertex: str
    detail: str = ""

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")


@dataclass(frozen=True)
class Partition:
    """Ordered blocks of edge ids."""

    blocks: tuple[tuple[str, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[str]]):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in blocks))

    def validate(self, edges: Iterable[str]) -> None:
        expected = list(edges)
        flat = [e for b in self.blocks for e in b]
        if any(not b for b in self.blocks):
            raise BadPartition("empty block")
        if len(flat) != len(set(flat)):
            raise BadPartition("blocks are not disjoint")
        if set(flat) != set(expected):
            raise BadPartition(f"blocks {self} do not cover exactly {sorted(expected)}")

    def block_of(self) -> dict[str, int]:
        """Edge id -> 1-based block index."""
        return {e: i for i, b in enumerate(self.blocks, start=1) for e in b}

    def __str__(self):
        return "|".join(",".join(b) for b in self.blocks)


@dataclass(frozen=True)
class HairSpec:
    lengths: Mapping[str, int] = field(default_factory=dict)

    def validate(self, g: Graph) -> None:
        if set(self.lengths) != g.vertex_set:
            raise BadSpec("hair lengths must cover exactly the vertex set")
        for v, n in self.lengths.items():
            if not isinstance(n, int) or n < 1:
                raise BadSpec(f"hair length at {v!r} must be a positive integer, got {n!r}")


def composite(e: str, f: str) -> str:
    return f"[{e}{f}]"


def _build(vertices, edges) -> Graph:
    try:
        return Graph(tuple(vertices), tuple(edges))
    except InvalidGraph as exc:
        raise InvalidGraph(f"derived graph is not well formed ({exc})") from None


# -- source elimination ------------------------------------------------------


def source_eliminate(g: Graph, v: str) -> Graph:
    """Delete the source ``v`` and every edge it emits.  May return the empty graph."""
    if not g.is_source(v):
        raise NotASource(f"{v!r} receives edges")
    return Graph(
        tuple(u for u in g.vertices if u != v),
        tuple(e for e in g.edges if e.src != v),
    )


@dataclass(frozen=True)
class SFResult:
    sf: Graph
    removed_isolated: tuple[str, ...]
    trace: tuple[MoveRecord, ...]
    trivial: bool  # sf is the E_triv stand-in for an emptied graph


def sf_reduce(g: Graph) -> SFResult:
    """Eliminate non-isolated sources (smallest label first), then isolated vertices.

    An input that already is a single isolated vertex is returned unchanged.
    If the process empties the graph, ``sf`` is the one-vertex graph ``E_TRIV``.
    """
    if len(g.vertices) == 1 and not g.edges:
        return SFResult(g, (), (), False)
    trace: list[MoveRecord] = []
    while True:
        cands = sorted(v for v in g.vertices if g.is_source(v) and not g.is_sink(v))
        if not cands:
            break
        v = cands[0]
        trace.append(MoveRecord("SourceElim", v, ",".join(e.id for e in g.out_edges(v))))
        g = source_eliminate(g, v)
    isolated = sorted(v for v in g.vertices if g.is_source(v) and g.is_sink(v))
    for v in isolated:
        trace.append(MoveRecord("IsolatedRemoval", v))
        g = source_eliminate(g, v)
    if not g.vertices:
        return SFResult(E_TRIV, tuple(isolated), tuple(trace), True)
    return SFResult(g, tuple(isolated), tuple(trace), False)


def eliminate_sources(g: Graph, choose: Callable[[list[str]], str]) -> Graph:
    """Exhaustive source elimination in the order picked by ``choose``.

    ``choose`` receives the sorted list of current sources (isolated ones
    included).  The ``E_triv`` convention is applied to an emptied result.
    """
    if not g.vertices:
        return E_TRIV
    while True:
        srcs = sorted(v for v in g.vertices if g.is_source(v))
        if not srcs:
            return g
        if len(g.vertices) == 1:
            return g  # E_{t-1} = E_triv
        g = source_eliminate(g, choose(srcs))


def random_elimination(g: Graph, rng: random.Random) -> Graph:
    return eliminate_sources(g, rng.choice)


# -- Move (R) and collapse ----------------------------------------------------


def move_r_check(g: Graph, w: str) -> Edge:
    """Return the unique edge emitted by ``w`` if Move (R) applies, else raise."""
    out = g.out_edges(w)
    if len(out) != 1:
        raise MoveRNotApplicable(f"{w!r} emits {len(out)} edges, need exactly 1")
    f = out[0]
    if f.dst == w:
        raise MoveRNotApplicable(f"the edge {f.id!r} emitted by {w!r} is a loop")
    senders = {e.src for e in g.in_edges(w)}
    if len(senders) > 1:
        raise MoveRNotApplicable(f"{w!r} receives from {len(senders)} vertices")
    return f


def move_r(g: Graph, w: str) -> Graph:
    f = move_r_check(g, w)
    edges: list[Edge] = []
    for e in g.edges:
        if e.id == f.id:
            continue
        if e.dst == w:
            edges.append(Edge(composite(e.id, f.id), e.src, f.dst))
        else:
            edges.append(e)
    return _build((u for u in g.vertices if u != w), edges)


def collapse(g: Graph, v: str) -> Graph:
    out = g.out_edges(v)
    if not out:
        raise VertexIsSink(f"{v!r} is a sink")
    if g.loops_at(v):
        raise LoopAtVertex(f"{v!r} is the base of a loop")
    edges: list[Edge] = []
    for e in g.edges:
        if e.src == v:
            continue
        if e.dst == v:
            edges.extend(Edge(composite(e.id, f.id), e.src, f.dst) for f in out)
        else:
            edges.append(e)
    return _build((u for u in g.vertices if u != v), edges)


# -- splittings ---------------------------------------------------------------


def in_split_vertex(v: str, j: int) -> str:
    return f"{v}_{j}"


def in_split_edge(e: str, j: int) -> str:
    return f"{e}#{j}"


def out_split_vertex(v: str, j: int) -> str:
    return f"{v}^{j}"


def out_split_edge(e: str, j: int) -> str:
    return f"{e}^{j}"


def in_split(g: Graph, v: str, p: Partition) -> Graph:
    incoming = g.in_edges(v)
    if not incoming:
        raise SourceVertex(f"{v!r} is a source")
    p.validate(e.id for e in incoming)
    block = p.block_of()
    n = len(p.blocks)

    def rng_(e: Edge) -> str:
        return in_split_vertex(v, block[e.id]) if e.dst == v else e.dst

    vertices: list[str] = []
    for u in g.vertices:
        if u == v:
            vertices.extend(in_split_vertex(v, j) for j in range(1, n + 1))
        else:
            vertices.append(u)
    edges: list[Edge] = []
    for e in g.edges:
        if e.src == v:
            edges.extend(
                Edge(in_split_edge(e.id, j), in_split_vertex(v, j), rng_(e)) for j in range(1, n + 1)
            )
        else:
            edges.append(Edge(e.id, e.src, rng_(e)))
    return _build(vertices, edges)


def out_split(g: Graph, v: str, p: Partition) -> Graph:
    outgoing = g.out_edges(v)
    if not outgoing:
        raise SinkVertex(f"{v!r} is a sink")
    p.validate(e.id for e in outgoing)
    block = p.block_of()
    n = len(p.blocks)

    def src_(e: Edge) -> str:
        return out_split_vertex(v, block[e.id]) if e.src == v else e.src

    vertices: list[str] = []
    for u in g.vertices:
        if u == v:
            vertices.extend(out_split_vertex(v, j) for j in range(1, n + 1))
        else:
            vertices.append(u)
    edges: list[Edge] = []
    for e in g.edges:
        if e.dst == v:
            edges.extend(
                Edge(out_split_edge(e.id, j), src_(e), out_split_vertex(v, j)) for j in range(1, n + 1)
            )
        else:
            edges.append(Edge(e.id, src_(e), e.dst))
    return _build(vertices, edges)


# -- hair and line graphs -----------------------------------------------------


def strand_vertex(v: str, j: int) -> str:
    return v if j == 0 else f"{v}^{j}"


def strand_edge(v: str, j: int) -> str:
    return f"e_{v}^{j}"


def hair_extend(g: Graph, spec: HairSpec | Mapping[str, int]) -> Graph:
    """Attach to each vertex ``v`` a strand of ``n_v - 1`` new vertices feeding it."""
    if not isinstance(spec, HairSpec):
        spec = HairSpec(dict(spec))
    spec.validate(g)
    vertices = list(g.vertices)
    edges = list(g.edges)
    for v in g.vertices:
        for j in range(1, spec.lengths[v]):
            vertices.append(strand_vertex(v, j))
            edges.append(Edge(strand_edge(v, j), strand_vertex(v, j), strand_vertex(v, j - 1)))
    return _build(vertices, edges)


def m_n_graph(g: Graph, n: int) -> Graph:
    if not isinstance(n, int) or n < 1:
        raise BadSpec(f"n must be a positive integer, got {n!r}")
    return hair_extend(g, HairSpec({v: n for v in g.vertices}))


def line_graph(n: int) -> Graph:
    """``A_n``: vertices ``v{n-1} .. v0`` with edges ``e{i}: v{i} -> v{i-1}``."""
    if not isinstance(n, int) or n < 1:
        raise BadSpec(f"n must be a positive integer, got {n!r}")
    return Graph(
        tuple(f"v{i}" for i in range(n - 1, -1, -1)),
        tuple(Edge(f"e{i}", f"v{i}", f"v{i - 1}") for i in range(n - 1, 0, -1)),
    )


def rose(k: int, v: str = "v") -> Graph:
    """One vertex with ``k`` loops labelled ``l1..lk``."""
    return Graph((v,), tuple(Edge(f"l{i}", v, v) for i in range(1, k + 1)))


def sender_partition(g: Graph, v: str) -> Partition:
    """Blocks ``r^{-1}(v) ∩ s^{-1}(u)`` grouped by sending vertex ``u`` (sorted)."""
    groups: dict[str, list[str]] = {}
    for e in g.in_edges(v):
        groups.setdefault(e.src, []).append(e.id)
    return Partition(groups[u] for u in sorted(groups))


def singleton_partition(edges: Sequence[Edge]) -> Partition:
    return Partition([e.id] for e in edges)
