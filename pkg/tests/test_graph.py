import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _graphs import collapse_E, edge_shape, graphs, loop_edge_base, iso_F, rose2
from lpacorner.errors import InvalidGraph, NotHereditary, NotSubgraph, UnknownVertex
from lpacorner.graph import (
    E_TRIV,
    Edge,
    Graph,
    classify_vertex,
    disjoint_union,
    hereditary_closure,
    is_acyclic,
    is_complete_subgraph,
    is_hereditary,
    is_isomorphic,
    is_saturated,
    is_totally_looped,
    restriction,
    shortest_simple_path,
    subset_properties,
)
from lpacorner.moves import hair_extend, line_graph


class TestValidation:
    def test_bad_labels(self):
        for bad in ("", "a b", "a,b", "a:b"):
            with pytest.raises(InvalidGraph):
                Graph((bad,))

    def test_duplicates_and_dangling(self):
        with pytest.raises(InvalidGraph):
            Graph(("a", "a"))
        with pytest.raises(InvalidGraph):
            Graph(("a",), (Edge("e", "a", "a"), Edge("e", "a", "a")))
        with pytest.raises(InvalidGraph):
            Graph(("a",), (Edge("e", "a", "b"),))

    def test_structural_equality_ignores_order(self):
        g = Graph(("a", "b"), (Edge("e", "a", "b"), Edge("f", "b", "a")))
        h = Graph(("b", "a"), (Edge("f", "b", "a"), Edge("e", "a", "b")))
        assert g == h and hash(g) == hash(h)


class TestClassify:
    def test_sink_in_iso_F(self):
        c = classify_vertex(iso_F(), "v3")
        assert c == (True, False, False, False, False)

    def test_isolated(self):
        assert classify_vertex(E_TRIV, "v") == (True, True, True, False, False)

    def test_rose(self):
        assert classify_vertex(rose2(), "v") == (False, False, False, True, True)

    def test_unknown(self):
        with pytest.raises(UnknownVertex):
            classify_vertex(rose2(), "w")


class TestSubsets:
    def test_closure_examples(self):
        assert hereditary_closure(iso_F(), {"v1"}) == {"v1", "v2", "v3"}
        assert hereditary_closure(iso_F(), set()) == set()
        assert hereditary_closure(line_graph(3), {"v1"}) == {"v1", "v0"}

    def test_properties_examples(self):
        F = iso_F()
        for r in range(len(F.vertices) + 1):
            for S in itertools.combinations(F.vertices, r):
                assert subset_properties(F, S)["saturated"]
        g = collapse_E()
        assert subset_properties(g, g.vertices) == {"hereditary": True, "saturated": True}
        assert subset_properties(line_graph(2), {"v1"}) == {"hereditary": False, "saturated": True}

    def test_totally_looped_examples(self):
        assert is_totally_looped(iso_F())
        assert is_totally_looped(Graph(("a", "b")))
        assert not is_totally_looped(line_graph(2))

    def test_restriction_examples(self):
        F = iso_F()
        FT = restriction(F, {"v1", "v2", "v3"})
        assert FT.vertex_set == {"v1", "v2", "v3"} and len(FT.edges) == 6
        assert restriction(F, F.vertices) == F
        assert restriction(line_graph(2), {"v0"}) == Graph(("v0",))
        with pytest.raises(NotHereditary):
            restriction(F, {"v1"})

    def test_disjoint_union_examples(self):
        two = disjoint_union([line_graph(1), line_graph(1)])
        assert len(two.vertices) == 2 and not two.edges
        assert disjoint_union([]) == Graph(())
        u = disjoint_union([line_graph(2), rose2()])
        assert (len(u.vertices), len(u.edges)) == (3, 3)
        assert is_complete_subgraph(u, Graph(("1.v",), (Edge("1.e", "1.v", "1.v"), Edge("1.f", "1.v", "1.v"))))

    def test_complete_subgraph_examples(self):
        base = loop_edge_base()
        assert is_complete_subgraph(hair_extend(base, {"v1": 3, "v2": 2}), base)
        assert is_complete_subgraph(base, base)
        # a vertex that emits nothing in the subgraph imposes no condition
        assert is_complete_subgraph(line_graph(2), Graph(("v1",)))
        g = Graph(("a", "b"), (Edge("x", "a", "b"), Edge("y", "a", "a")))
        assert not is_complete_subgraph(g, Graph(("a", "b"), (Edge("x", "a", "b"),)))
        with pytest.raises(NotSubgraph):
            is_complete_subgraph(line_graph(2), Graph(("zz",)))

    def test_shortest_path_examples(self):
        p = shortest_simple_path(iso_F(), "v1", "v3")
        assert [e.id for e in p] == ["b", "g"]
        assert shortest_simple_path(iso_F(), "v2", "v2") == []
        assert shortest_simple_path(line_graph(2), "v0", "v1") is None

    def test_shortest_path_lexicographic_tie(self):
        g = Graph(("a", "b", "c", "d"), (Edge("z", "a", "b"), Edge("y", "a", "c"), Edge("q", "b", "d"), Edge("r", "c", "d")))
        assert [e.id for e in shortest_simple_path(g, "a", "d")] == ["y", "r"]


class TestIsomorphism:
    def test_relabelled(self):
        g = collapse_E()
        h = Graph(
            tuple("ABCD"),
            (Edge("1", "A", "B"), Edge("2", "B", "A"), Edge("3", "A", "C"), Edge("4", "C", "A"), Edge("5", "A", "D")),
        )
        assert is_isomorphic(g, h)
        assert not is_isomorphic(g, line_graph(4))

    def test_acyclic(self):
        assert is_acyclic(line_graph(4))
        assert not is_acyclic(rose2())


@settings(max_examples=60, deadline=None)
@given(graphs(max_v=6, max_e=8), st.data())
def test_closure_idempotent_monotone_hereditary(g, data):
    S = data.draw(st.sets(st.sampled_from(g.vertices)))
    T = data.draw(st.sets(st.sampled_from(g.vertices)))
    c = hereditary_closure(g, S)
    assert hereditary_closure(g, c) == c
    assert c <= hereditary_closure(g, S | T)
    assert subset_properties(g, c)["hereditary"]
    assert is_complete_subgraph(g, restriction(g, c))


@settings(max_examples=40, deadline=None)
@given(graphs(max_v=6, max_e=8))
def test_totally_looped_every_subset_saturated(g):
    extra = tuple(Edge(f"o{v}", v, v) for v in g.vertices if g.out_edges(v) and not g.loops_at(v))
    g = Graph(g.vertices, g.edges + extra)
    assert is_totally_looped(g)
    for r in range(len(g.vertices) + 1):
        for S in itertools.combinations(g.vertices, r):
            assert is_saturated(g, S)


@settings(max_examples=60, deadline=None)
@given(graphs(max_v=6, max_e=9), st.data())
def test_shortest_path_is_simple(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    w = data.draw(st.sampled_from(g.vertices))
    p = shortest_simple_path(g, v, w)
    if p is None:
        assert w not in hereditary_closure(g, {v})
        return
    seen = [v] + [e.dst for e in p]
    assert len(seen) == len(set(seen))
    assert all(a.dst == b.src for a, b in zip(p, p[1:]))
    if p:
        assert p[0].src == v and p[-1].dst == w


def test_hereditary_check_matches_definition():
    g = iso_F()
    assert is_hereditary(g, {"v3"}) and not is_hereditary(g, {"v2"})
    assert edge_shape(restriction(g, {"v3"})) == {}
