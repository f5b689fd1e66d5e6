import random

import pytest

from _graphs import iso_hair, random_graph, rose2
from lpacorner.algebra import (
    GF,
    QQ,
    GeneratorMap,
    LeavittPathAlgebra,
    Mod,
    Monomial,
    PathTerm,
    defining_relations,
    degree_split,
    end_iso_phi,
    end_iso_phi_inverse,
    identity_map,
    in_split_pi,
    move_r_psi,
    multiply,
    normal_form,
    random_element,
    verify_generator_map,
)
from lpacorner.errors import GraphMismatch, MoveRNotApplicable, NotInCorner, SourceVertex
from lpacorner.graph import E_TRIV, Edge, Graph
from lpacorner.moves import Partition, composite, in_split, line_graph, move_r_check, rose, sender_partition
from lpacorner.projective import end_graph

FIELDS = [QQ, GF(7)]


def psi_applicable(g: Graph, w: str) -> bool:
    try:
        move_r_check(g, w)
    except MoveRNotApplicable:
        return False
    return True


def psi_suite(want: int, seed: int = 2):
    """Random Move (R) instances, always led by the source case on ``A_3``."""
    rng = random.Random(seed)
    found = [(line_graph(3), "v2"), (line_graph(3), "v1")]
    while len(found) < want:
        g = random_graph(rng, max_v=5, max_e=7, min_v=2)
        ws = [w for w in g.vertices if psi_applicable(g, w)]
        if ws:
            found.append((g, rng.choice(ws)))
    return found


def random_partition(rng: random.Random, ids: list[str]) -> Partition:
    k = rng.randint(1, len(ids))
    blocks = [[] for _ in range(k)]
    ids = ids[:]
    rng.shuffle(ids)
    for i, e in enumerate(ids):
        blocks[i if i < k else rng.randrange(k)].append(e)
    return Partition(blocks)


def pi_suite(want: int, seed: int = 3):
    """Random in-splits at regular vertices, plus loop-carrying blocks and a one-block sink."""
    rng = random.Random(seed)
    loops = Graph(("v", "w"), (Edge("e", "v", "v"), Edge("f", "v", "w"), Edge("g", "w", "v"), Edge("h", "w", "w")))
    found = [
        (rose2(), "v", Partition([["e"], ["f"]])),
        (rose2(), "v", Partition([["e", "f"]])),
        (loops, "v", Partition([["e"], ["g"]])),
        (line_graph(2), "v0", Partition([["e1"]])),
    ]
    while len(found) < want:
        g = random_graph(rng, max_v=4, max_e=6)
        vs = [v for v in g.vertices if g.in_edges(v) and g.out_edges(v)]
        if vs:
            v = rng.choice(vs)
            found.append((g, v, random_partition(rng, [e.id for e in g.in_edges(v)])))
    return found


class TestProducts:
    def test_examples(self):
        R = LeavittPathAlgebra(rose2())
        assert R.ghost("e") * R.edge("e") == R.vertex("v")
        assert (R.ghost("e") * R.edge("f")).is_zero()
        A2 = LeavittPathAlgebra(line_graph(2))
        assert A2.edge("e1") * A2.ghost("e1") == A2.vertex("v1")

    def test_concatenation_rules(self):
        R = LeavittPathAlgebra(rose2())
        a = R.monomial(("e",), ("f",))
        b = R.monomial(("f", "e"), ("e",))
        assert a * b == R.monomial(("e", "e"), ("e",))
        assert b * a == R.monomial(("f", "e"), ("f",))
        assert (R.ghost("e") * R.monomial(("f",), ("f",))).is_zero()

    def test_graph_mismatch(self):
        R = LeavittPathAlgebra(rose2())
        S = LeavittPathAlgebra(rose(3))
        with pytest.raises(GraphMismatch):
            R.vertex("v") * S.vertex("v")
        with pytest.raises(GraphMismatch):
            multiply(rose(3), R.vertex("v"), R.vertex("v"))


class TestNormalForm:
    def test_examples(self):
        A2 = LeavittPathAlgebra(line_graph(2))
        raw = A2.element({Monomial(PathTerm("v1", ("e1",)), PathTerm("v1", ("e1",))): 1}, reduce=False)
        assert normal_form(line_graph(2), raw) == A2.vertex("v1")
        R = LeavittPathAlgebra(rose2())
        ee = R.element({Monomial(PathTerm("v", ("e",)), PathTerm("v", ("e",))): 1}, reduce=False)
        assert normal_form(rose2(), ee) == R.vertex("v") - R.monomial(("f",), ("f",))
        assert normal_form(rose2(), R.vertex("v")) == R.vertex("v")

    def test_idempotent_and_linear(self):
        rng = random.Random(1)
        for field in FIELDS:
            L = LeavittPathAlgebra(rose2(), field)
            for _ in range(30):
                a, b = random_element(L, rng, 3, 4), random_element(L, rng, 3, 4)
                assert normal_form(L.graph, a) == a
                assert normal_form(L.graph, a + b.scale(3)) == a + b.scale(3)

    def test_basis_is_independent_in_low_degree(self):
        L = LeavittPathAlgebra(line_graph(2))
        # A_2 has dimension 4: v0, e1, e1*, v1 = e1 e1* is not a basis element
        assert len(L.basis_monomials(3)) == 4


class TestRelations:
    @pytest.mark.parametrize("field", FIELDS, ids=["QQ", "GF7"])
    def test_all_vanish(self, field):
        graphs = [E_TRIV, line_graph(3), rose2(), iso_hair().total, Graph(("a", "b"), (Edge("x", "a", "b"), Edge("y", "a", "b")))]
        rng = random.Random(4)
        graphs += [random_graph(rng, 4, 6) for _ in range(10)]
        for g in graphs:
            assert verify_generator_map(g, g, identity_map(LeavittPathAlgebra(g, field))).ok

    def test_triv_has_only_vertex_relations(self):
        rels = defining_relations(E_TRIV)
        assert rels and all(r.name.startswith("(1)") for r in rels)

    def test_names(self):
        names = {r.name for r in defining_relations(line_graph(2))}
        assert "(4) v1" in names
        assert "(3) e*f" in {r.name for r in defining_relations(rose2())}


class TestGrading:
    def test_examples(self):
        R = LeavittPathAlgebra(rose2())
        parts = degree_split(rose2(), R.edge("e") + R.ghost("f"))
        assert parts == {1: R.edge("e"), -1: R.ghost("f")}
        assert degree_split(rose2(), R.vertex("v")) == {0: R.vertex("v")}
        m = R.monomial(("e", "f"), ("e",))
        assert degree_split(rose2(), m) == {1: m}

    def test_additive(self):
        rng = random.Random(6)
        for field in FIELDS:
            L = LeavittPathAlgebra(iso_hair().base, field)
            for _ in range(25):
                a, b = random_element(L, rng, 2, 3), random_element(L, rng, 2, 3)
                pa, pb, pab = a.degree_split(), b.degree_split(), (a * b).degree_split()
                for n in set(pab) | {x + y for x in pa for y in pb}:
                    want = L.zero()
                    for x in pa:
                        if n - x in pb:
                            want = want + pa[x] * pb[n - x]
                    assert pab.get(n, L.zero()) == want


class TestInvolution:
    def test_anti_homomorphism(self):
        rng = random.Random(7)
        for field in FIELDS:
            L = LeavittPathAlgebra(rose2(), field)
            for _ in range(40):
                a, b = random_element(L, rng, 3, 4), random_element(L, rng, 3, 4)
                assert (a * b).star() == b.star() * a.star()
                assert a.star().star() == a


class TestScalars:
    def test_prime_field(self):
        F = GF(7)
        assert F(3) * F(5) == F(1) and F(3).inverse() == F(5)
        assert F("1/3") == F(5)
        assert isinstance(F(2), Mod)
        with pytest.raises(ValueError):
            GF(8)

    def test_mod_seven_kills_seven(self):
        L = LeavittPathAlgebra(rose2(), GF(7))
        assert L.vertex("v").scale(7).is_zero()


class TestPsi:
    def test_examples(self):
        A3 = line_graph(3)
        psi = move_r_psi(A3, "v1")
        L = psi.dst
        assert psi.image(("e", "[e2e1]")) == L.path(("e2", "e1"))
        assert psi.image(("v", "v0")) == L.vertex("v0")
        with pytest.raises(MoveRNotApplicable):
            move_r_psi(Graph(("w", "x"), (Edge("l", "w", "w"), Edge("m", "w", "x"))), "w")

    @pytest.mark.parametrize("field", FIELDS, ids=["QQ", "GF7"])
    def test_relations_killed(self, field):
        suite = psi_suite(12)
        assert any(not g.in_edges(w) for g, w in suite)
        for g, w in suite:
            psi = move_r_psi(g, w, field)
            res = verify_generator_map(psi.src, g, psi)
            assert res.ok, res.failures

    def test_zero_vertex_breaks_map(self):
        A3 = line_graph(3)
        psi = move_r_psi(A3, "v1")
        psi.on_vertices["v2"] = psi.dst.zero()
        res = verify_generator_map(psi.src, A3, psi)
        assert not res.ok and any(name.startswith("(4)") for name, _ in res.failures)

    def test_non_idempotent_vertex_fails_first_relation(self):
        A3 = line_graph(3)
        psi = move_r_psi(A3, "v1")
        psi.on_vertices["v2"] = psi.dst.vertex("v2").scale(2)
        res = verify_generator_map(psi.src, A3, psi)
        assert "(1) v2.v2" in {name for name, _ in res.failures}

    def test_partial_map_rejected(self):
        g = line_graph(2)
        m = GeneratorMap(g, LeavittPathAlgebra(g))
        assert not verify_generator_map(g, g, m).ok

    def test_image_in_corner(self):
        for g, w in psi_suite(10, seed=5):
            psi = move_r_psi(g, w)
            L = psi.dst
            eps = L.zero()
            for u in g.vertices:
                if u != w:
                    eps = eps + L.vertex(u)
            G = LeavittPathAlgebra(psi.src)
            for m in G.basis_monomials(2):
                img = psi.apply(G.element({m: 1}))
                assert eps * img * eps == img

    def test_every_corner_monomial_has_a_preimage(self):
        for g, w in psi_suite(10, seed=5):
            if len(g.vertices) > 4:
                continue
            psi = move_r_psi(g, w)
            L, G = psi.dst, LeavittPathAlgebra(psi.src)
            f = move_r_check(g, w)
            for m in L.basis_monomials(3):
                if w in (m.p.start, m.q.start):
                    continue
                p, q = _lift(g, w, f.id, m.p), _lift(g, w, f.id, m.q)
                assert psi.apply(G.element({Monomial(p, q): 1})) == L.element({m: 1})


def _lift(g: Graph, w: str, f: str, p: PathTerm) -> PathTerm:
    """Read a path of ``E`` avoiding ``w`` at both ends as a path of the moved graph."""
    edges = list(p.edges)
    if edges and g.edge(edges[-1]).dst == w:
        edges.append(f)
    out, i = [], 0
    while i < len(edges):
        e = edges[i]
        if g.edge(e).dst == w:
            out.append(composite(e, f))
            i += 2
        else:
            out.append(e)
            i += 1
    return PathTerm(p.start, tuple(out))


class TestPi:
    def test_examples(self):
        g = Graph(("a", "v", "z"), (Edge("x", "a", "v"), Edge("y", "v", "z"), Edge("l", "a", "a")))
        pi = in_split_pi(g, "v", Partition([["x"]]))
        L = pi.dst
        assert pi.image(("v", "v")) == L.vertex("v_1")
        assert pi.image(("e", "l")) == L.edge("l")
        pi = in_split_pi(rose2(), "v", Partition([["e"], ["f"]]))
        L = pi.dst
        want = L.path(("e#1", "e#1")) * L.ghost("e#1") + L.path(("e#1", "f#1")) * L.ghost("f#1")
        assert pi.image(("e", "e")) == want

    def test_source_rejected(self):
        with pytest.raises(SourceVertex):
            in_split_pi(line_graph(2), "v1", Partition([["e1"]]))

    @pytest.mark.parametrize("field", FIELDS, ids=["QQ", "GF7"])
    def test_relations_killed(self, field):
        suite = pi_suite(12)
        assert any(g.loops_at(v) for g, v, _ in suite)
        for g, v, p in suite:
            pi = in_split_pi(g, v, p, field)
            assert pi.dst.graph == in_split(g, v, p)
            res = verify_generator_map(g, pi.dst.graph, pi)
            assert res.ok, res.failures

    def test_sink_with_several_blocks_is_not_a_homomorphism(self):
        g = Graph(("a", "b", "v"), (Edge("x", "a", "v"), Edge("y", "b", "v"), Edge("la", "a", "a"), Edge("lb", "b", "b")))
        assert verify_generator_map(g, in_split(g, "v", Partition([["x", "y"]])), in_split_pi(g, "v", Partition([["x", "y"]]))).ok
        p = sender_partition(g, "v")
        assert not verify_generator_map(g, in_split(g, "v", p), in_split_pi(g, "v", p)).ok


def corner_sample(L: LeavittPathAlgebra, rng: random.Random, vi: str, vj: str, max_len: int = 2, max_terms: int = 3):
    """Random nonzero element of ``vi L vj`` built from reduced basis monomials."""
    basis = [m for m in L.basis_monomials(max_len) if m.p.start == vi and m.q.start == vj]
    terms = {rng.choice(basis): rng.choice((-2, -1, 1, 2, 3)) for _ in range(rng.randint(1, max_terms))}
    return L.element(terms)


def _iso_data():
    h = iso_hair()
    eg = end_graph(h, {"v1^2": 1})
    return h, eg.G, LeavittPathAlgebra(h.total), [(v, d) for v in eg.normalized.T for d in range(eg.normalized.mults[v])]


class TestPhi:
    def test_examples(self):
        h, G, L, _ = _iso_data()
        out = end_iso_phi(h, G, ("v1", 1, "v1", 1), L.vertex("v1"))
        assert out == LeavittPathAlgebra(G).vertex("v1^1")
        assert end_iso_phi(h, G, ("v2", 0, "v2", 0), L.vertex("v2")) == LeavittPathAlgebra(G).vertex("v2")

    def test_not_in_corner(self):
        h, G, L, _ = _iso_data()
        with pytest.raises(NotInCorner):
            end_iso_phi(h, G, ("v1", 0, "v1", 0), L.vertex("v2"))
        with pytest.raises(NotInCorner):
            end_iso_phi(h, G, ("v3", 1, "v3", 0), L.vertex("v3"))

    def test_products_and_round_trip(self):
        h, G, L, idx = _iso_data()
        rng = random.Random(10)
        for _ in range(30):
            (i, y), (l, w), (j, z) = rng.choice(idx), rng.choice(idx), rng.choice(idx)
            x = corner_sample(L, rng, i, l)
            x2 = corner_sample(L, rng, l, j)
            assert x and x2
            a = end_iso_phi(h, G, (i, y, l, w), x)
            b = end_iso_phi(h, G, (l, w, j, z), x2)
            assert a * b == end_iso_phi(h, G, (i, y, j, z), x * x2)
            assert end_iso_phi_inverse(G, (i, y, l, w), a) == a.algebra.transfer(x)
