"""Exact arithmetic in Leavitt path algebras ``L_K(E)``.

Elements are finite combinations of monomials ``p q*`` (``r(p) = r(q)``) with
exact scalars, always stored in normal form: for every regular vertex ``u``
the special edge ``gamma_u`` is the smallest edge id in ``s^-1(u)``, and no
stored monomial has both ``p`` and ``q`` ending in the same special edge.
The rewrite

    p' g (q' g)*  ->  p' q'*  -  sum_{e in s^-1(u), e != g} (p' e)(q' e)*

eliminates such monomials; it terminates because every produced term is either
shorter or no longer reducible, and the reduced monomials form a basis, so two
elements are equal iff their normal forms coincide.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import FormatError, GraphMismatch, NotInCorner, SourceVertex, UnknownEdge
from .graph import Edge, Graph
from .moves import Partition, composite, in_split, in_split_edge, in_split_vertex, move_r, move_r_check, strand_edge, strand_vertex

# -- scalars -------------------------------------------------------------------


class Rationals:
    name = "QQ"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            try:
                return Fraction(x)
            except ValueError:
                raise FormatError(f"bad rational {x!r}") from None
        if isinstance(x, Mod):
            raise TypeError("cannot coerce a prime-field residue to QQ")
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class Mod:
    """Residue modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> "Mod":
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other
        return GF(self.p)(other)

    def __add__(self, other):
        return Mod(self.v + self._coerce(other).v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod(self.v - self._coerce(other).v, self.p)

    def __rsub__(self, other):
        return Mod(self._coerce(other).v - self.v, self.p)

    def __mul__(self, other):
        return Mod(self.v * self._coerce(other).v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def inverse(self) -> "Mod":
        if not self.v:
            raise ZeroDivisionError("zero has no inverse")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return bool(self.v)

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


class GF:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> Mod:
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ValueError("mixing residues of different primes")
            return x
        if isinstance(x, str):
            try:
                x = Fraction(x)
            except ValueError:
                raise FormatError(f"bad scalar {x!r}") from None
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = Rationals()


def conjugate(c):
    """The field involution; trivial for QQ and prime fields."""
    return c


# -- monomials -------------------------------------------------------------------


class PathTerm(NamedTuple):
    start: str
    edges: tuple[str, ...] = ()

    def end(self, g: Graph) -> str:
        return g.edge(self.edges[-1]).dst if self.edges else self.start


class Monomial(NamedTuple):
    p: PathTerm
    q: PathTerm

    @property
    def degree(self) -> int:
        return len(self.p.edges) - len(self.q.edges)

    def star(self) -> "Monomial":
        return Monomial(self.q, self.p)

    def sort_key(self):
        return (len(self.p.edges) + len(self.q.edges), self.p.edges, self.q.edges, self.p.start, self.q.start)


def check_path(g: Graph, p: PathTerm) -> None:
    g.check_vertex(p.start)
    at = p.start
    for eid in p.edges:
        if not g.has_edge(eid):
            raise UnknownEdge(f"unknown edge {eid!r}")
        e = g.edge(eid)
        if e.src != at:
            raise FormatError(f"edges {p.edges} do not form a path from {p.start!r}")
        at = e.dst


def mono_mul(a: Monomial, b: Monomial) -> Monomial | None:
    """``(p q*)(s t*)`` via ``e* f = delta_{e,f} r(e)``; ``None`` when the product is 0."""
    q, s = a.q, b.p
    if q.start != s.start:
        return None
    lq, ls = len(q.edges), len(s.edges)
    if lq <= ls:
        if s.edges[:lq] != q.edges:
            return None
        return Monomial(PathTerm(a.p.start, a.p.edges + s.edges[lq:]), b.q)
    if q.edges[:ls] != s.edges:
        return None
    return Monomial(a.p, PathTerm(b.q.start, b.q.edges + q.edges[ls:]))


# -- the algebra -----------------------------------------------------------------


class LeavittPathAlgebra:
    """``L_K(E)`` for a finite graph ``E`` and ``K`` = ``QQ`` or ``GF(p)``."""

    def __init__(self, graph: Graph, field=QQ):
        self.graph = graph
        self.field = field
        self.gamma = {v: min(e.id for e in graph.out_edges(v)) for v in graph.vertices if graph.out_edges(v)}

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, LeavittPathAlgebra) and self.graph == other.graph and self.field == other.field

    def __hash__(self):
        return hash((self.graph, self.field))

    def __repr__(self):
        return f"L_{self.field!r}({self.graph!r})"

    # constructors
    def element(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = (), reduce=True) -> "AlgebraElement":
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Monomial, object] = {}
        for m, c in terms:
            self.check_monomial(m)
            acc[m] = acc.get(m, self.field(0)) + self.field(c)
        if reduce:
            return AlgebraElement(self, self._reduce(acc))
        return AlgebraElement(self, {m: c for m, c in acc.items() if c})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return self.element({Monomial(PathTerm(v), PathTerm(v)): 1 for v in self.graph.vertices})

    def vertex(self, v: str) -> "AlgebraElement":
        self.graph.check_vertex(v)
        return AlgebraElement(self, {Monomial(PathTerm(v), PathTerm(v)): self.field(1)})

    def path(self, edges: Sequence[str], start: str | None = None) -> "AlgebraElement":
        """The path ``e_1 ... e_n`` (or the vertex ``start`` if ``edges`` is empty)."""
        edges = tuple(edges)
        if edges:
            start = self._edge(edges[0]).src
        p = PathTerm(start, edges)
        check_path(self.graph, p)
        end = p.end(self.graph)
        return self.element({Monomial(p, PathTerm(end)): 1})

    def edge(self, e: str) -> "AlgebraElement":
        return self.path((e,))

    def ghost(self, e: str) -> "AlgebraElement":
        return self.edge(e).star()

    def monomial(self, p: Sequence[str] | PathTerm, q: Sequence[str] | PathTerm, coeff=1) -> "AlgebraElement":
        p, q = self._as_path(p), self._as_path(q)
        return self.element({Monomial(p, q): coeff})

    def _as_path(self, p) -> PathTerm:
        if isinstance(p, PathTerm):
            return p
        p = tuple(p)
        if not p:
            raise ValueError("use a PathTerm for a length-0 path")
        return PathTerm(self._edge(p[0]).src, p)

    def _edge(self, e: str) -> Edge:
        if not self.graph.has_edge(e):
            raise UnknownEdge(f"unknown edge {e!r}")
        return self.graph.edge(e)

    def check_monomial(self, m: Monomial) -> None:
        check_path(self.graph, m.p)
        check_path(self.graph, m.q)
        if m.p.end(self.graph) != m.q.end(self.graph):
            raise FormatError(f"r(p) != r(q) in {m}")

    # normal form
    def is_reducible(self, m: Monomial) -> bool:
        if not m.p.edges or not m.q.edges:
            return False
        e = m.p.edges[-1]
        return e == m.q.edges[-1] and self.gamma.get(self.graph.edge(e).src) == e

    def _reduce(self, terms: Mapping[Monomial, object]) -> dict[Monomial, object]:
        zero = self.field(0)
        out: dict[Monomial, object] = {}
        work = [(m, c) for m, c in terms.items() if c]
        while work:
            m, c = work.pop()
            if not self.is_reducible(m):
                out[m] = out.get(m, zero) + c
                continue
            g = m.p.edges[-1]
            u = self.graph.edge(g).src
            p1 = PathTerm(m.p.start, m.p.edges[:-1])
            q1 = PathTerm(m.q.start, m.q.edges[:-1])
            work.append((Monomial(p1, q1), c))
            for e in self.graph.out_edges(u):
                if e.id != g:
                    work.append((Monomial(PathTerm(p1.start, p1.edges + (e.id,)), PathTerm(q1.start, q1.edges + (e.id,))), -c))
        return {m: c for m, c in out.items() if c}

    def normal_form(self, a: "AlgebraElement") -> "AlgebraElement":
        self._check(a)
        return AlgebraElement(self, self._reduce(a.terms))

    def _check(self, a: "AlgebraElement") -> None:
        if a.algebra is not self and a.algebra != self:
            raise GraphMismatch("element belongs to a different algebra")

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        self._check(a)
        self._check(b)
        acc: dict[Monomial, object] = {}
        zero = self.field(0)
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                m = mono_mul(ma, mb)
                if m is not None:
                    acc[m] = acc.get(m, zero) + ca * cb
        return AlgebraElement(self, self._reduce(acc))

    def transfer(self, a: "AlgebraElement") -> "AlgebraElement":
        """Re-read ``a`` in this algebra, identifying generators with equal labels."""
        out = {}
        for m, c in a.terms.items():
            for path in (m.p, m.q):
                check_path(self.graph, path)
                for eid in path.edges:
                    if self.graph.edge(eid) != a.algebra.graph.edge(eid):
                        raise GraphMismatch(f"edge {eid!r} differs between the two graphs")
            out[m] = self.field(c)
        return self.element(out)

    # relation bookkeeping
    def basis_monomials(self, max_len: int) -> list[Monomial]:
        """Normal-form basis monomials with ``|p|, |q| <= max_len``."""
        paths = paths_up_to(self.graph, max_len)
        by_end: dict[str, list[PathTerm]] = {}
        for p in paths:
            by_end.setdefault(p.end(self.graph), []).append(p)
        out = []
        for ps in by_end.values():
            for p in ps:
                for q in ps:
                    m = Monomial(p, q)
                    if not self.is_reducible(m):
                        out.append(m)
        return sorted(out, key=Monomial.sort_key)


def paths_up_to(g: Graph, max_len: int) -> list[PathTerm]:
    out = [PathTerm(v) for v in g.vertices]
    layer = list(out)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for e in g.out_edges(p.end(g)):
                nxt.append(PathTerm(p.start, p.edges + (e.id,)))
        out.extend(nxt)
        layer = nxt
    return out


class AlgebraElement:
    """Immutable element of a :class:`LeavittPathAlgebra` (kept in normal form)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittPathAlgebra, terms: dict[Monomial, object]):
        self.algebra = algebra
        self.terms = terms

    @property
    def graph(self) -> Graph:
        return self.algebra.graph

    def _same(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or (other.algebra is not self.algebra and other.algebra != self.algebra):
            raise GraphMismatch("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        acc = dict(self.terms)
        zero = self.algebra.field(0)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, zero) + c
        return AlgebraElement(self.algebra, {m: c for m, c in acc.items() if c})

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "AlgebraElement":
        k = self.algebra.field(k)
        if not k:
            return self.algebra.zero()
        return AlgebraElement(self.algebra, {m: k * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, k):
        return self.scale(k)

    def star(self) -> "AlgebraElement":
        return self.algebra.element({m.star(): conjugate(c) for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree_split(self) -> dict[int, "AlgebraElement"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.degree, {})[m] = c
        return {d: AlgebraElement(self.algebra, t) for d, t in sorted(parts.items())}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __str__(self):
        from .serialize import format_element

        return format_element(self)

    def __repr__(self):
        return f"<{self}>"


def multiply(g: Graph, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.graph != g or b.graph != g:
        raise GraphMismatch("operands are not over the given graph")
    return a.algebra.multiply(a, b)


def normal_form(g: Graph, a: AlgebraElement) -> AlgebraElement:
    if a.graph != g:
        raise GraphMismatch("element is not over the given graph")
    return a.algebra.normal_form(a)


def degree_split(g: Graph, a: AlgebraElement) -> dict[int, AlgebraElement]:
    if a.graph != g:
        raise GraphMismatch("element is not over the given graph")
    return a.degree_split()


# -- relations and generator maps -------------------------------------------------

Generator = tuple[str, str]  # ("v", label) | ("e", id) | ("e*", id)


@dataclass(frozen=True)
class Relation:
    """A formal combination of generator words that must vanish in ``L_K(E)``."""

    name: str
    terms: tuple[tuple[int, tuple[Generator, ...]], ...]

    def evaluate(self, images: "GeneratorMap") -> AlgebraElement:
        alg = images.dst
        total = alg.zero()
        for coeff, word in self.terms:
            prod = alg.one()
            for gen in word:
                prod = prod * images.image(gen)
            total = total + prod.scale(coeff)
        return total


def defining_relations(g: Graph) -> list[Relation]:
    rels: list[Relation] = []
    V, E = g.vertices, g.edges
    for u in V:
        for w in V:
            terms = [(1, (("v", u), ("v", w)))]
            if u == w:
                terms.append((-1, (("v", w),)))
            rels.append(Relation(f"(1) {u}.{w}", tuple(terms)))
    for e in E:
        rels.append(Relation(f"(2) s({e.id}){e.id}", ((1, (("v", e.src), ("e", e.id))), (-1, (("e", e.id),)))))
        rels.append(Relation(f"(2) {e.id}r({e.id})", ((1, (("e", e.id),)), (-1, (("e", e.id), ("v", e.dst))))))
        rels.append(Relation(f"(2) r({e.id}){e.id}*", ((1, (("v", e.dst), ("e*", e.id))), (-1, (("e*", e.id),)))))
        rels.append(Relation(f"(2) {e.id}*s({e.id})", ((1, (("e*", e.id),)), (-1, (("e*", e.id), ("v", e.src))))))
    for e in E:
        for f in E:
            terms = [(1, (("e*", e.id), ("e", f.id)))]
            if e.id == f.id:
                terms.append((-1, (("v", e.dst),)))
            rels.append(Relation(f"(3) {e.id}*{f.id}", tuple(terms)))
    for v in V:
        out = g.out_edges(v)
        if out:
            terms = [(1, (("v", v),))] + [(-1, (("e", e.id), ("e*", e.id))) for e in out]
            rels.append(Relation(f"(4) {v}", tuple(terms)))
    return rels


@dataclass
class GeneratorMap:
    """Images of the generators of ``L(src)`` inside ``dst``."""

    src: Graph
    dst: LeavittPathAlgebra
    on_vertices: dict[str, AlgebraElement] = field(default_factory=dict)
    on_edges: dict[str, AlgebraElement] = field(default_factory=dict)
    on_ghost_edges: dict[str, AlgebraElement] = field(default_factory=dict)

    def image(self, gen: Generator) -> AlgebraElement:
        kind, label = gen
        table = {"v": self.on_vertices, "e": self.on_edges, "e*": self.on_ghost_edges}[kind]
        return table[label]

    def is_total(self) -> bool:
        return (
            set(self.on_vertices) == self.src.vertex_set
            and set(self.on_edges) == {e.id for e in self.src.edges}
            and set(self.on_ghost_edges) == {e.id for e in self.src.edges}
        )

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        """Multiplicative extension of the map to an element of ``L(src)``."""
        if x.graph != self.src:
            raise GraphMismatch("element is not over the source graph")
        total = self.dst.zero()
        for m, c in x.terms.items():
            prod = self.on_vertices[m.p.start]
            for eid in m.p.edges:
                prod = prod * self.on_edges[eid]
            for eid in reversed(m.q.edges):
                prod = prod * self.on_ghost_edges[eid]
            total = total + prod.scale(c)
        return total

    def unit_image(self) -> AlgebraElement:
        total = self.dst.zero()
        for v in self.src.vertices:
            total = total + self.on_vertices[v]
        return total


def identity_map(alg: LeavittPathAlgebra) -> GeneratorMap:
    g = alg.graph
    return GeneratorMap(
        g,
        alg,
        {v: alg.vertex(v) for v in g.vertices},
        {e.id: alg.edge(e.id) for e in g.edges},
        {e.id: alg.ghost(e.id) for e in g.edges},
    )


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failures: tuple[tuple[str, str], ...]


def verify_generator_map(src: Graph, dst: Graph, m: GeneratorMap) -> VerifyResult:
    """Push every defining relation of ``L(src)`` through ``m`` and normal-form in ``L(dst)``."""
    if m.src != src or m.dst.graph != dst:
        raise GraphMismatch("generator map does not go from src to dst")
    if not m.is_total():
        return VerifyResult(False, (("domain", "map is not total on the generators"),))
    failures = []
    for rel in defining_relations(src):
        img = rel.evaluate(m)
        if not img.is_zero():
            failures.append((rel.name, str(img)))
    one = m.unit_image()
    if one * one != one:
        failures.append(("idempotent", str(one * one - one)))
    return VerifyResult(not failures, tuple(failures))


def move_r_psi(e_graph: Graph, w: str, field=QQ) -> GeneratorMap:
    """``psi: L(G) -> L(E)`` for ``G`` = Move (R) at ``w``."""
    f = move_r_check(e_graph, w)
    G = move_r(e_graph, w)
    L = LeavittPathAlgebra(e_graph, field)
    comp = {composite(e.id, f.id): e.id for e in e_graph.in_edges(w)}
    on_v = {u: L.vertex(u) for u in G.vertices}
    on_e, on_g = {}, {}
    for g in G.edges:
        if g.id in comp:
            on_e[g.id] = L.path((comp[g.id], f.id))
            on_g[g.id] = L.ghost(f.id) * L.ghost(comp[g.id])
        else:
            on_e[g.id] = L.edge(g.id)
            on_g[g.id] = L.ghost(g.id)
    return GeneratorMap(G, L, on_v, on_e, on_g)


def in_split_pi(e_graph: Graph, v: str, p: Partition, field=QQ) -> GeneratorMap:
    """``pi: L(E) -> L(E_is)`` given by ``u -> Q_u``, ``e -> T_e``, ``e* -> T_{e*}``.

    An edge ``e`` emitted by ``v`` is not an edge of ``E_is``; where the
    displayed formula reads ``e`` for such an edge its first copy ``e_1`` is used.
    """
    if not e_graph.in_edges(v):
        raise SourceVertex(f"{v!r} is a source")
    Eis = in_split(e_graph, v, p)
    L = LeavittPathAlgebra(Eis, field)
    block = p.block_of()
    out_v = e_graph.out_edges(v)

    def cp(eid: str, j: int) -> AlgebraElement:
        return L.edge(in_split_edge(eid, j))

    def cp_star(eid: str, j: int) -> AlgebraElement:
        return L.ghost(in_split_edge(eid, j))

    on_v = {u: L.vertex(in_split_vertex(v, 1) if u == v else u) for u in e_graph.vertices}
    on_e, on_g = {}, {}
    for e in e_graph.edges:
        into_v, from_v = e.dst == v, e.src == v
        if into_v:
            i = block[e.id]
            head = cp(e.id, 1) if from_v else L.edge(e.id)
            head_star = cp_star(e.id, 1) if from_v else L.ghost(e.id)
            if out_v:
                on_e[e.id] = _sum(L, (head * cp(f.id, i) * cp_star(f.id, 1) for f in out_v))
                on_g[e.id] = _sum(L, (cp(f.id, 1) * cp_star(f.id, i) * head_star for f in out_v))
            else:
                on_e[e.id] = head
                on_g[e.id] = head_star
        elif from_v:
            on_e[e.id] = cp(e.id, 1)
            on_g[e.id] = cp_star(e.id, 1)
        else:
            on_e[e.id] = L.edge(e.id)
            on_g[e.id] = L.ghost(e.id)
    return GeneratorMap(e_graph, L, on_v, on_e, on_g)


def _sum(L: LeavittPathAlgebra, xs: Iterable[AlgebraElement]) -> AlgebraElement:
    total = L.zero()
    for x in xs:
        total = total + x
    return total


# -- the End(Q) isomorphism, one matrix entry at a time ------------------------------


def strand_path(L: LeavittPathAlgebra, v: str, depth: int) -> AlgebraElement:
    """``p_v^depth``: the strand path from ``v^depth`` down to ``v`` (``v`` itself for depth 0)."""
    if depth == 0:
        return L.vertex(v)
    return L.path(tuple(strand_edge(v, j) for j in range(depth, 0, -1)))


def corner_project(x: AlgebraElement, vi: str, vj: str) -> AlgebraElement:
    L = x.algebra
    return L.vertex(vi) * x * L.vertex(vj)


def end_iso_phi(h, g_out: Graph, indices: tuple[str, int, str, int], x: AlgebraElement, field=None) -> AlgebraElement:
    """``x in v_i L(E) v_j  |->  p_i^y x (p_j^z)*`` in ``L(g_out)``.

    ``h`` is the :class:`~lpacorner.projective.HairExtension` whose total graph
    carries ``x``; ``g_out`` is the hair extension ``F_T^+(m)`` built by
    ``end_graph``.  Depths ``y``, ``z`` run over ``0 .. m - 1``.
    """
    vi, y, vj, z = indices
    if x.graph != h.total:
        raise GraphMismatch("x is not an element over the hair extension")
    if corner_project(x, vi, vj) != x:
        raise NotInCorner(f"element is not in {vi} L {vj}")
    G = LeavittPathAlgebra(g_out, field or x.algebra.field)
    for v, d in ((vi, y), (vj, z)):
        g_out.check_vertex(v)
        if d < 0 or (d > 0 and strand_vertex(v, d) not in g_out.vertex_set):
            raise NotInCorner(f"no strand vertex {v}^{d} in the output graph")
    xg = G.transfer(x)
    return strand_path(G, vi, y) * xg * strand_path(G, vj, z).star()


def end_iso_phi_inverse(g_out: Graph, indices: tuple[str, int, str, int], s: AlgebraElement) -> AlgebraElement:
    """``(p_i^y)* s p_j^z``; left inverse of :func:`end_iso_phi` on its image."""
    vi, y, vj, z = indices
    G = s.algebra
    if G.graph != g_out:
        raise GraphMismatch("element is not over the output graph")
    return strand_path(G, vi, y).star() * s * strand_path(G, vj, z)


def random_element(L: LeavittPathAlgebra, rng: random.Random, max_len=2, max_terms=3, coeffs=(-2, -1, 1, 2, 3)) -> AlgebraElement:
    """Random combination of reduced basis monomials (for property checks)."""
    basis = L.basis_monomials(max_len)
    k = rng.randint(1, max_terms)
    return L.element({rng.choice(basis): rng.choice(coeffs) for _ in range(k)})
