"""The graph monoid ``M_E``: vertex multisets modulo ``v = sum_{e in s^-1(v)} r(e)``.

Congruence is decided (boundedly) by bidirectional breadth-first search over
the symmetric one-step relation.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import SinkVertex, UnsupportedMoveKind
from .graph import Graph
from .moves import MoveRecord


class MonoidElement:
    """Finitely supported map vertex -> positive multiplicity; immutable and hashable."""

    __slots__ = ("_items",)

    def __init__(self, coeffs: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(coeffs, Mapping):
            coeffs = coeffs.items()
        acc: Counter[str] = Counter()
        for v, n in coeffs:
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"multiplicity of {v!r} must be a nonnegative integer, got {n!r}")
            acc[v] += n
        self._items = tuple(sorted((v, n) for v, n in acc.items() if n))

    @classmethod
    def of(cls, vertices: Iterable[str]) -> "MonoidElement":
        """Multiset counting repeated vertices."""
        return cls(Counter(vertices))

    def items(self):
        return self._items

    def as_dict(self) -> dict[str, int]:
        return dict(self._items)

    def support(self) -> list[str]:
        return [v for v, _ in self._items]

    def mass(self) -> int:
        return sum(n for _, n in self._items)

    def __getitem__(self, v: str) -> int:
        return dict(self._items).get(v, 0)

    def __bool__(self):
        return bool(self._items)

    def __add__(self, other: "MonoidElement") -> "MonoidElement":
        return MonoidElement(self._items + other._items)

    def __mul__(self, k: int) -> "MonoidElement":
        return MonoidElement((v, n * k) for v, n in self._items)

    __rmul__ = __mul__

    def __sub__(self, other: "MonoidElement") -> "MonoidElement":
        d = Counter(dict(self._items))
        for v, n in other._items:
            if d[v] < n:
                raise ValueError(f"{other} does not embed into {self}")
            d[v] -= n
        return MonoidElement(d)

    def contains(self, other: "MonoidElement") -> bool:
        mine = dict(self._items)
        return all(mine.get(v, 0) >= n for v, n in other._items)

    def drop(self, v: str) -> "MonoidElement":
        return MonoidElement((u, n) for u, n in self._items if u != v)

    def drop_all(self, vs) -> "MonoidElement":
        return MonoidElement((u, n) for u, n in self._items if u not in vs)

    def __eq__(self, other):
        if isinstance(other, MonoidElement):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == MonoidElement(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __str__(self):
        return ",".join(f"{v}:{n}" for v, n in self._items)

    def __repr__(self):
        return f"MonoidElement({{{', '.join(f'{v!r}: {n}' for v, n in self._items)}}})"


ZERO = MonoidElement()


def amp_relation(g: Graph, v: str) -> MonoidElement:
    """The multiset ``sum_{e in s^-1(v)} r(e)``."""
    out = g.out_edges(v)
    if not out:
        raise SinkVertex(f"{v!r} is a sink")
    return MonoidElement.of(e.dst for e in out)


def forward_step(g: Graph, m: MonoidElement, v: str) -> MonoidElement:
    """Replace one occurrence of ``v`` by ``amp_relation(g, v)``."""
    return m - MonoidElement({v: 1}) + amp_relation(g, v)


def step_neighbors(g: Graph, m: MonoidElement) -> set[MonoidElement]:
    """Every element one forward or one backward step away from ``m`` (``m`` itself excluded)."""
    for v in m.support():
        g.check_vertex(v)
    out: set[MonoidElement] = set()
    for v in g.vertices:
        if g.is_sink(v):
            continue
        rel = amp_relation(g, v)
        if m[v]:
            out.add(m - MonoidElement({v: 1}) + rel)
        if m.contains(rel):
            out.add(m - rel + MonoidElement({v: 1}))
    out.discard(m)
    return out


class Status(enum.Enum):
    EQUIVALENT = "Equivalent"
    INEQUIVALENT = "Inequivalent"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CongruenceVerdict:
    status: Status
    witness: tuple[MonoidElement, ...] | None = None
    states: int = 0

    def __str__(self):
        s = self.status.value
        if self.witness is not None:
            s += ": " + " ~ ".join(str(m) or "0" for m in self.witness)
        return s


class _Stepper:
    """Integer-vector form of ``step_neighbors`` for the search loop."""

    def __init__(self, g: Graph):
        self.index = {v: i for i, v in enumerate(g.vertices)}
        self.n = len(g.vertices)
        self.rules = []
        for v in g.vertices:
            if g.is_sink(v):
                continue
            rel = [0] * self.n
            for e in g.out_edges(v):
                rel[self.index[e.dst]] += 1
            self.rules.append((self.index[v], tuple(rel)))

    def encode(self, m: MonoidElement) -> tuple[int, ...]:
        vec = [0] * self.n
        for v, k in m.items():
            vec[self.index[v]] = k
        return tuple(vec)

    def decode(self, vec, names) -> MonoidElement:
        return MonoidElement((names[i], k) for i, k in enumerate(vec) if k)

    def neighbors(self, x: tuple[int, ...]):
        for i, rel in self.rules:
            if x[i]:
                y = [a + b for a, b in zip(x, rel)]
                y[i] -= 1
                yield tuple(y)
            if all(a >= b for a, b in zip(x, rel)):
                y = [a - b for a, b in zip(x, rel)]
                y[i] += 1
                yield tuple(y)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class IntegerLattice:
    """Sublattice of ``Z^n`` kept as echelon rows; exact membership test."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list[int]] = {}

    def add(self, v) -> None:
        v = list(v)
        for col in range(self.n):
            if not v[col]:
                continue
            b = self.rows.get(col)
            if b is None:
                self.rows[col] = v if v[col] > 0 else [-x for x in v]
                return
            d, x, y = _xgcd(b[col], v[col])
            p, q = b[col] // d, v[col] // d
            self.rows[col] = [x * bi + y * vi for bi, vi in zip(b, v)]
            if self.rows[col][col] < 0:
                self.rows[col] = [-t for t in self.rows[col]]
            v = [q * bi - p * vi for bi, vi in zip(b, v)]

    def __contains__(self, v) -> bool:
        v = list(v)
        for col in range(self.n):
            if not v[col]:
                continue
            b = self.rows.get(col)
            if b is None or v[col] % b[col]:
                return False
            k = v[col] // b[col]
            v = [vi - k * bi for vi, bi in zip(v, b)]
        return True


def order_ideal_support(g: Graph, m: MonoidElement) -> frozenset[str]:
    """Smallest hereditary saturated vertex set containing the support of ``m``; a congruence invariant."""
    S = set(m.support())
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in S:
                new = [w for w in g.successors(v) if w not in S]
                if new:
                    S.update(new)
                    changed = True
            elif g.is_regular(v) and all(w in S for w in g.successors(v)):
                S.add(v)
                changed = True
    return frozenset(S)


@lru_cache(maxsize=256)
def grothendieck_lattice(g: Graph) -> IntegerLattice:
    """Relation lattice spanned by ``amp_relation(v) - v`` over the regular vertices."""
    st = _Stepper(g)
    lat = IntegerLattice(st.n)
    for i, rel in st.rules:
        vec = list(rel)
        vec[i] -= 1
        lat.add(vec)
    return lat


def quotient_graph(g: Graph, H: Iterable[str]) -> Graph:
    """``E/H``: drop the vertices of ``H`` and every edge landing in ``H``."""
    H = set(H)
    return Graph(
        tuple(v for v in g.vertices if v not in H),
        tuple(e for e in g.edges if e.src not in H and e.dst not in H),
    )


@lru_cache(maxsize=256)
def _quotient_ideals(g: Graph) -> tuple[frozenset[str], ...]:
    """Nonempty proper hereditary saturated sets generated by one vertex."""
    out = {order_ideal_support(g, MonoidElement({v: 1})) for v in g.vertices}
    return tuple(sorted((H for H in out if len(H) < len(g.vertices)), key=sorted))


def _separated_here(g: Graph, a: MonoidElement, b: MonoidElement) -> bool:
    if order_ideal_support(g, a) != order_ideal_support(g, b):
        return True
    st = _Stepper(g)
    diff = [x - y for x, y in zip(st.encode(a), st.encode(b))]
    return diff not in grothendieck_lattice(g)


def separated_by_invariants(g: Graph, a: MonoidElement, b: MonoidElement, depth: int = 2, states: int = 2000) -> bool:
    """True when a monoid invariant proves ``a`` and ``b`` inequivalent.

    Invariants: the generated order ideal, the class in the group completion,
    and the verdict for the images in quotients ``E/H`` by hereditary
    saturated ``H`` (the map ``M_E -> M_{E/H}`` killing ``H`` is a monoid
    homomorphism), decided there by a small bounded search.
    """
    if _separated_here(g, a, b):
        return True
    if depth <= 0:
        return False
    for H in _quotient_ideals(g):
        q = quotient_graph(g, H)
        qa, qb = a.drop_all(H), b.drop_all(H)
        if qa == qb:
            continue
        if congruent_within(q, qa, qb, states, _depth=depth - 1).status is Status.INEQUIVALENT:
            return True
    return False


def congruent_within(
    g: Graph,
    a: MonoidElement,
    b: MonoidElement,
    max_states: int = 100_000,
    use_invariants: bool = True,
    _depth: int = 2,
) -> CongruenceVerdict:
    """Bounded bidirectional BFS for ``a ~_E b``.

    ``Equivalent`` carries a witness chain of one-step rewrites from ``a`` to
    ``b``.  ``Inequivalent`` is returned when the whole congruence class of
    ``a`` or of ``b`` has been enumerated without meeting the other side, or
    (with ``use_invariants``) when the two elements differ in an invariant of
    the congruence: the order ideal they generate, or their image in the
    group completion.  ``max_states`` bounds the number of distinct multisets
    visited by both searches together.
    """
    for v in a.support() + b.support():
        g.check_vertex(v)
    if a == b:
        return CongruenceVerdict(Status.EQUIVALENT, (a,), 1)
    if use_invariants and separated_by_invariants(g, a, b, _depth):
        return CongruenceVerdict(Status.INEQUIVALENT, None, 0)
    st = _Stepper(g)
    names = list(g.vertices)
    xa, xb = st.encode(a), st.encode(b)
    parents = ({xa: None}, {xb: None})
    frontiers = ([xa], [xb])

    def chain(side, x):
        out = []
        while x is not None:
            out.append(x)
            x = parents[side][x]
        return out

    while True:
        visited = len(parents[0]) + len(parents[1])
        if not frontiers[0] or not frontiers[1]:
            return CongruenceVerdict(Status.INEQUIVALENT, None, visited)
        sizes = [(len(frontiers[i]), len(parents[i])) for i in (0, 1)]
        side = 0 if sizes[0] <= sizes[1] else 1
        other = 1 - side
        nxt = []
        for x in frontiers[side]:
            for y in st.neighbors(x):
                if y in parents[side]:
                    continue
                parents[side][y] = x
                if y in parents[other]:
                    left = chain(side, y)[::-1]
                    right = chain(other, y)[1:]
                    path = left + right
                    if side == 1:
                        path = path[::-1]
                    return CongruenceVerdict(
                        Status.EQUIVALENT,
                        tuple(st.decode(p, names) for p in path),
                        len(parents[0]) + len(parents[1]),
                    )
                nxt.append(y)
                if len(parents[0]) + len(parents[1]) >= max_states:
                    return CongruenceVerdict(Status.UNKNOWN, None, max_states)
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)


def class_map_under_move(move: MoveRecord, g_before: Graph, m: MonoidElement) -> MonoidElement:
    """Image of a class under the Morita equivalence attached to ``move``.

    SourceElim/Collapse at ``v`` redistribute ``m(v)`` copies of ``v`` along
    ``amp_relation``; IsolatedRemoval drops ``v`` (the caller extracts its
    coefficient first).
    """
    v = move.vertex
    g_before.check_vertex(v)
    for u in m.support():
        g_before.check_vertex(u)
    if move.kind == "IsolatedRemoval":
        return m.drop(v)
    if move.kind not in ("SourceElim", "Collapse"):
        raise UnsupportedMoveKind(f"no class map for {move.kind}")
    k = m[v]
    if not k:
        return m.drop(v)
    return m.drop(v) + amp_relation(g_before, v) * k
