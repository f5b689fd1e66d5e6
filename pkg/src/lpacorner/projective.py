"""Projective-module classes over hair extensions of totally looped graphs.

A class ``[Q] = sum n_x [L x]`` is a vertex multiset.  Over ``E = F^+(n_1..n_t)``
it is first pushed down the hair onto ``F``, then grown along shortest paths
until its support is a hereditary set ``T``; the endomorphism ring of ``Q`` is
then the Leavitt path algebra of ``F_T^+(m_v : v in T)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import BadSpec, UnknownVertex, ZeroClass
from .graph import Graph, hereditary_closure, is_complete_subgraph, is_totally_looped, restriction, shortest_simple_path
from .monoid import MonoidElement, amp_relation
from .moves import HairSpec, hair_extend, strand_vertex


class ProjectiveClass(MonoidElement):
    """A nonzero vertex multiset."""

    __slots__ = ()

    def __init__(self, coeffs=()):
        super().__init__(coeffs)
        if not self:
            raise ZeroClass("projective class must be nonzero")


def as_projective(m) -> ProjectiveClass:
    if isinstance(m, ProjectiveClass):
        return m
    if isinstance(m, MonoidElement):
        return ProjectiveClass(m.items())
    return ProjectiveClass(m)


@dataclass(frozen=True)
class HairExtension:
    base: Graph
    spec: HairSpec
    total: Graph = field(init=False)
    strand_map: Mapping[str, tuple[str, int]] = field(init=False)

    def __post_init__(self):
        if not is_totally_looped(self.base):
            raise BadSpec("the base of a hair extension must be totally looped")
        total = hair_extend(self.base, self.spec)
        strands = {
            strand_vertex(v, j): (v, j)
            for v in self.base.vertices
            for j in range(1, self.spec.lengths[v])
        }
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "strand_map", strands)

    @classmethod
    def trivial(cls, base: Graph) -> "HairExtension":
        """``F = F^+(1, ..., 1)``."""
        return cls(base, HairSpec({v: 1 for v in base.vertices}))

    @classmethod
    def of(cls, base: Graph, lengths: Mapping[str, int]) -> "HairExtension":
        return cls(base, HairSpec(dict(lengths)))

    def is_consistent(self) -> bool:
        return is_complete_subgraph(self.total, self.base) and set(self.strand_map) == (
            self.total.vertex_set - self.base.vertex_set
        )


@dataclass(frozen=True)
class NormalizedClass:
    T: tuple[str, ...]
    mults: Mapping[str, int]
    steps: tuple[str, ...] = ()  # vertices at which a replacement step was applied, in order

    def as_element(self) -> MonoidElement:
        return MonoidElement(dict(self.mults))

    def to_json(self) -> dict:
        return {"T": list(self.T), "mults": {v: self.mults[v] for v in self.T}}


def _check_class(h: HairExtension, q) -> ProjectiveClass:
    q = as_projective(q)
    for v in q.support():
        if v not in h.total.vertex_set:
            raise UnknownVertex(f"unknown vertex {v!r}")
    return q


def descend_hair(h: HairExtension, q) -> ProjectiveClass:
    """Move every coefficient at a strand vertex ``v^j`` onto its base vertex ``v``."""
    q = _check_class(h, q)
    return ProjectiveClass((h.strand_map.get(v, (v, 0))[0], n) for v, n in q.items())


def dagger_step(base: Graph, m: MonoidElement, v: str) -> MonoidElement:
    """One replacement ``L v = L v + L r(e_1) + sum_{e != f, e_1} L r(e)``.

    With ``f`` a loop at ``v`` this is exactly one forward rewrite at ``v``:
    the multiplicity of ``v`` is kept and every non-``f`` edge adds its range.
    """
    if m[v] < 1:
        raise ValueError(f"{v!r} is not in the support")
    return m - MonoidElement({v: 1}) + amp_relation(base, v)


def normalize(h: HairExtension, q) -> NormalizedClass:
    base = h.base
    m: MonoidElement = descend_hair(h, q)
    T = hereditary_closure(base, m.support())
    steps: list[str] = []
    while True:
        missing = sorted(z for z in T if not m[z])
        if not missing:
            break
        best = None
        for v in m.support():
            for z in missing:
                path = shortest_simple_path(base, v, z)
                if path is None:
                    continue
                key = (len(path), v, z)
                if best is None or key < best[0]:
                    best = (key, path)
        # z lies in the hereditary closure of the support, so some path exists
        _, path = best
        z = path[-1].dst
        for e in path:
            u = e.src
            m = dagger_step(base, m, u)
            steps.append(u)
            if m[z]:
                break
    return NormalizedClass(tuple(v for v in base.vertices if v in T), m.as_dict(), tuple(steps))


def is_generator(h: HairExtension, q) -> bool:
    return set(normalize(h, q).T) == h.base.vertex_set


@dataclass(frozen=True)
class EndGraph:
    G: Graph
    normalized: NormalizedClass
    restricted: Graph  # F_T

    def as_hair(self) -> HairExtension:
        """``G`` viewed as the hair extension ``F_T^+(m_v)``."""
        return HairExtension.of(self.restricted, self.normalized.mults)


def end_graph(h: HairExtension, q) -> EndGraph:
    """Graph ``G = F_T^+(m_v)`` whose Leavitt path algebra is ``End(Q)``."""
    nc = normalize(h, q)
    FT = restriction(h.base, nc.T)
    G = hair_extend(FT, HairSpec({v: nc.mults[v] for v in nc.T}))
    return EndGraph(G, nc, FT)
