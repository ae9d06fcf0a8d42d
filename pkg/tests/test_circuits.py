from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pantsgraph.autos import from_word, induced_automorphism, random_word
from pantsgraph.circuits import (
    Circuit,
    Unclassifiable,
    census,
    classify_triangle,
    enumerate_circuits,
    has_alternating_form,
    is_alternating,
    is_minimal,
    is_standard_heptagon,
    is_standard_pentagon,
    is_tame,
    is_two_tight,
    type3_membership,
)
from pantsgraph.farey import FareyTriangle, normalize
from pantsgraph.graphs import LabeledGraph, ball, make_edge
from pantsgraph.models import CENTRE, FanOracle, N3Oracle, Rim, V1, V2, V3

S = normalize
N3 = N3Oracle()
T0 = V3(FareyTriangle.of(S(0, 1), S(1, 1), S(1, 2)))


@pytest.fixture(scope="module")
def g2():
    return ball(N3, T0, 2, 8)


@pytest.fixture(scope="module")
def g3():
    return ball(N3, T0, 3, 6)


def pentagon(T, a1, a2):
    return Circuit.from_vertices(N3, [T, V2(a1), V1(a1), V1(a2), V2(a2)])


def to_nx(g: LabeledGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from((e.source, e.target) for e in g.edges())
    return h


@pytest.mark.parametrize("radius,width,max_len", [(2, 8, 5), (3, 4, 5), (2, 5, 6)])
def test_cycle_counts_match_networkx(radius, width, max_len):
    g = ball(N3, T0, radius, width)
    ours = enumerate_circuits(g, max_len)
    theirs = [c for c in nx.simple_cycles(to_nx(g), length_bound=max_len) if len(c) >= 3]
    assert len(ours) == len(theirs)
    assert {frozenset(c.vertices) for c in ours} <= {frozenset(c) for c in theirs}
    assert len({c.canonical() for c in ours}) == len(ours)


def test_interior_triangles_are_fans(g2):
    tris = enumerate_circuits(g2, 3, interior_only=True)
    assert tris and all(classify_triangle(t) == "Fan" for t in tris)
    for t in tris:
        kinds = sorted(v.kind for v in t.vertices)
        assert kinds == ["V2", "V3", "V3"]


def test_gamma1_triangles_are_farey():
    g = ball(N3, V1(S(0, 1)), 2, 8)
    v1 = g.induced(v for v in g.vertices if v.kind == "V1")
    tris = enumerate_circuits(v1, 3)
    assert tris and all(classify_triangle(t) == "Farey" for t in tris)


def test_pentagons_present(g2):
    cs = enumerate_circuits(g2, 5, interior_only=True)
    assert sum(is_standard_pentagon(c) for c in cs) > 0


def test_classify_triangle_examples():
    t = Circuit.from_vertices(N3, [V1(S(0, 1)), V1(S(1, 1)), V1(S(1, 2))])
    assert classify_triangle(t) == "Farey"
    T1 = V3(FareyTriangle.of(S(0, 1), S(1, 2), S(1, 3)))
    t = Circuit.from_vertices(N3, [V2(S(0, 1)), T0, T1])
    assert classify_triangle(t) == "Fan"


def test_unclassifiable_triangle_is_rejected():
    # an abstract triangle carrying an E12-style type-3 edge next to type-1 edges
    lab = {v: N3.label(v) for v in (V1(S(0, 1)), V1(S(1, 1)), V2(S(0, 1)))}
    g = LabeledGraph(lab)
    g.add_edge(make_edge(g.label, V1(S(0, 1)), V1(S(1, 1)), 1))
    g.add_edge(make_edge(g.label, V1(S(0, 1)), V2(S(0, 1)), 3))
    g.add_edge(make_edge(g.label, V1(S(1, 1)), V2(S(0, 1)), 3))
    with pytest.raises(Unclassifiable):
        classify_triangle(Circuit.from_vertices(g, list(lab)))


def test_alternating_examples():
    s, s1, s2 = S(0, 1), S(1, 1), S(1, 2)
    p = Circuit.from_vertices(N3, [V2(s), V1(s), V1(s1)], closed=False)
    assert is_alternating(p, N3)
    p = Circuit.from_vertices(N3, [V1(s), V1(s1), V1(s2)], closed=False)
    assert not is_alternating(p, N3)
    T1 = V3(FareyTriangle.of(S(0, 1), S(1, 2), S(1, 3)))
    p = Circuit.from_vertices(N3, [T0, V2(s), T1], closed=False)
    assert not is_alternating(p, N3)


def test_alternating_form_implies_alternating(g3):
    """Consecutive edges of alternating form are alternating, unless both are
    type-3 rim edges of one fan."""
    checked = 0
    for Y in g3.vertices:
        if not g3.is_interior(Y):
            continue
        for X, Z in itertools.combinations(g3.neighbors(Y), 2):
            if not has_alternating_form(g3, X, Y, Z):
                continue
            p = Circuit.from_vertices(N3, [X, Y, Z], closed=False)
            checked += 1
            if not is_alternating(p, N3):
                assert p.types == [3, 3]
                assert set(N3.common_neighbors(X, Y)) & set(N3.common_neighbors(Y, Z))
    assert checked > 0


def test_two_tight_examples(g2):
    for t in enumerate_circuits(g2, 3):
        assert is_two_tight(t)


def test_quadrangles_are_two_tight(g3):
    quads = [c for c in enumerate_circuits(g3, 4) if len(c) == 4]
    assert quads
    assert all(is_two_tight(q) for q in quads)
    assert all(is_tame(q, N3) for q in quads)


def test_minimal_vertices():
    fan = FanOracle()
    g = ball(fan, CENTRE, 1, 4)
    assert is_minimal(CENTRE, g)
    assert not is_minimal(Rim(0), g)
    c = pentagon(T0, S(0, 1), S(1, 1))
    assert not is_minimal(T0, c)
    assert all(is_minimal(v, c) for v in c.vertices if v.kind in ("V1", "V2"))


def test_standard_pentagon():
    c = pentagon(T0, S(0, 1), S(1, 1))
    assert is_standard_pentagon(c)
    assert not is_tame(c, N3)
    hexa = Circuit.from_vertices(N3, [T0, V2(S(0, 1)), V1(S(0, 1)), V1(S(1, 2)), V1(S(1, 1)), V2(S(1, 1))])
    assert not is_standard_pentagon(hexa)


def test_pentagons_in_gamma1_are_not_standard():
    g = ball(N3, V1(S(0, 1)), 2, 8)
    v1 = g.induced(v for v in g.vertices if v.kind == "V1")
    pents = [c for c in enumerate_circuits(v1, 5) if len(c) == 5]
    assert pents
    assert not any(is_standard_pentagon(c) for c in pents)


def test_heptagon_without_type4_is_not_standard():
    g = ball(N3, V1(S(0, 1)), 3, 5)
    v1 = g.induced(v for v in g.vertices if v.kind == "V1")
    hepts = [c for c in enumerate_circuits(v1, 7) if len(c) == 7]
    assert hepts
    assert not any(is_standard_heptagon(c, N3) for c in hepts[:50])


def test_type3_membership(g3):
    res = type3_membership(g3, N3)
    assert res["violations"] == []
    assert set(res["checked"]) <= {0, 2}
    assert res["checked"].get(2, 0) > 0


def test_e12_edges_lie_in_no_triangle():
    rng = random.Random(3)
    for _ in range(100):
        s = N3.sample_vertex(rng).slopes[0]
        assert N3.common_neighbors(V1(s), V2(s)) == []


def test_census(g2):
    res = census(g2, 5, N3)
    assert res["violations"] == []
    assert res["counts"]["3:Fan"] > 0
    assert "3:unclassifiable" not in res["counts"]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_predicates_are_invariant_under_automorphisms(seed):
    rng = random.Random(seed)
    A = induced_automorphism(from_word(random_word(rng, 6)))
    g = ball(N3, T0, 2, 5)
    cs = enumerate_circuits(g, 5, interior_only=True)
    for c in rng.sample(cs, min(10, len(cs))):
        d = Circuit.from_vertices(N3, [A(v) for v in c.vertices])
        assert d.types == c.types
        assert is_two_tight(d) == is_two_tight(c)
        assert is_alternating(d, N3) == is_alternating(c, N3)
        assert is_tame(d, N3) == is_tame(c, N3)
        assert is_standard_pentagon(d) == is_standard_pentagon(c)
