"""Independent oracles used only by the tests."""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy

from lpacorner.graph import Edge, Graph
from lpacorner.monoid import MonoidElement


class BinomialOracle:
    """Congruence on vertex multisets via a Groebner basis of ``<x_v - x^{r(s^-1(v))}>``.

    For a binomial ideal generated by differences of monomials, ``x^a - x^b``
    lies in the ideal exactly when ``a ~ b`` in the congruence generated by
    the same pairs, so equal normal forms decide the monoid relation.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.syms = sympy.symbols([f"x{i}" for i in range(len(g.vertices))])
        self.index = {v: s for v, s in zip(g.vertices, self.syms)}
        gens = []
        for v in g.vertices:
            out = g.out_edges(v)
            if out:
                rhs = sympy.Mul(*[self.index[e.dst] for e in out])
                gens.append(self.index[v] - rhs)
        self.gb = sympy.groebner(gens, *self.syms, order="grevlex") if gens else None
        self._nf: dict[MonoidElement, object] = {}

    def _monomial(self, m: MonoidElement):
        return sympy.Mul(*[self.index[v] ** n for v, n in m.items()])

    def normal_form(self, m: MonoidElement):
        if m not in self._nf:
            x = self._monomial(m)
            self._nf[m] = sympy.expand(x) if self.gb is None else self.gb.reduce(x)[1]
        return self._nf[m]

    def equivalent(self, a: MonoidElement, b: MonoidElement) -> bool:
        return sympy.expand(self.normal_form(a) - self.normal_form(b)) == 0


def class_is_finite(g: Graph, m: MonoidElement, limit: int = 2000) -> bool:
    """True when the one-step closure of ``m`` is exhausted within ``limit`` states."""
    from lpacorner.monoid import step_neighbors

    seen = {m}
    todo = [m]
    while todo:
        x = todo.pop()
        for y in step_neighbors(g, x):
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    return False
                todo.append(y)
    return True


def multisets(vertices, mass: int):
    for combo in itertools.combinations_with_replacement(vertices, mass):
        yield MonoidElement.of(combo)


def _canon(n: int, pairs) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[a], perm[b]) for a, b in pairs))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def small_graphs(max_v: int = 4, max_e: int = 5) -> tuple[Graph, ...]:
    """Every multigraph (loops allowed) with 1..max_v vertices and <= max_e edges, up to isomorphism."""
    out = []
    for n in range(1, max_v + 1):
        slots = [(a, b) for a in range(n) for b in range(n)]
        seen = set()
        for m in range(max_e + 1):
            for pairs in itertools.combinations_with_replacement(slots, m):
                key = _canon(n, pairs)
                if key in seen:
                    continue
                seen.add(key)
                vs = tuple(f"u{i}" for i in range(n))
                out.append(Graph(vs, tuple(Edge(f"x{j}", vs[a], vs[b]) for j, (a, b) in enumerate(key))))
    return tuple(out)
