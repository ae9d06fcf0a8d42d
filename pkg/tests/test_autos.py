from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pantsgraph.autos import (
    GENERATORS,
    IDENTITY,
    SlopeMap,
    compose,
    fixes_all,
    from_word,
    induced_automorphism,
    one_sided_degree,
    phi,
    random_word,
    sample_curves,
    sample_vertices,
    signature,
    witness,
    witnesses,
)
from pantsgraph.circuits import Circuit, enumerate_circuits, is_minimal
from pantsgraph.farey import FareyTriangle, is_adjacent, normalize
from pantsgraph.graphs import ball
from pantsgraph.models import (
    A0,
    FanOracle,
    N3Oracle,
    N12Oracle,
    Rim,
    V1,
    V3,
    curv_n3_adjacent,
    one_sided,
    two_sided,
)

S = normalize
N3 = N3Oracle()
T0 = V3(FareyTriangle.of(S(0, 1), S(1, 1), S(1, 2)))
CURVES = sample_curves(4)
words = st.text(alphabet="TtR", max_size=6)


def test_slope_map_basics():
    with pytest.raises(ValueError):
        SlopeMap(2, 0, 0, 1)
    T = GENERATORS["T"]
    assert T @ GENERATORS["t"] == IDENTITY
    assert T.inverse() == GENERATORS["t"]
    assert from_word("TR") == T @ GENERATORS["R"]
    with pytest.raises(ValueError):
        from_word("TX")


def test_induced_examples():
    I = induced_automorphism(IDENTITY)
    assert fixes_all(I, sample_vertices(3))
    A = induced_automorphism(GENERATORS["T"])
    assert A(V1(S(0, 1))) == V1(S(1, 1))
    img = A(T0)
    assert img.kind == "V3"
    a, b, c = img.data
    assert is_adjacent(a, b) and is_adjacent(b, c) and is_adjacent(a, c)


@settings(max_examples=40, deadline=None)
@given(words, st.integers(0, 10**6))
def test_induced_preserves_labeled_edges(word, seed):
    A = induced_automorphism(from_word(word))
    v = N3.sample_vertex(random.Random(seed))
    for e in N3.window(v, 10):
        f = N3.edge(A(e.source), A(e.target))
        assert f is not None and f.move_type == e.move_type
        if e.move_type == 4:
            assert f.tail == A(e.tail)


def test_phi_examples():
    I = induced_automorphism(IDENTITY)
    for c in CURVES:
        assert phi(I, c, witness(c)) == c
    A = induced_automorphism(GENERATORS["T"])
    assert phi(A, two_sided(S(0, 1)), witness(two_sided(S(0, 1)))) == two_sided(S(1, 1))
    c = one_sided(S(0, 1))
    assert len({phi(A, c, W) for W in witnesses(c)}) == 1
    with pytest.raises(ValueError):
        phi(A, A0, T0)


@settings(max_examples=40, deadline=None)
@given(words, words)
def test_phi_is_multiplicative(w1, w2):
    A, B = induced_automorphism(from_word(w1)), induced_automorphism(from_word(w2))
    AB = compose(A, B)
    for c in CURVES[:25]:
        inner = phi(B, c, witness(c))
        assert phi(AB, c, witness(c)) == phi(A, inner, witness(inner))


@settings(max_examples=30, deadline=None)
@given(words)
def test_phi_preserves_disjointness_and_matches_slope_action(word):
    m = from_word(word)
    A = induced_automorphism(m)
    image = {c: phi(A, c, witness(c)) for c in CURVES}
    assert all(image[c] == m.curve(c) for c in CURVES)
    for a, b in itertools.combinations(CURVES, 2):
        if curv_n3_adjacent(a, b):
            assert curv_n3_adjacent(image[a], image[b])


def test_phi_injectivity():
    # words whose slope action is trivial give the identity on vertices, and conversely
    for w in ["", "TtTt", "RR", "TRtR", "TTR"]:
        m = from_word(w)
        A = induced_automorphism(m)
        curves_fixed = all(phi(A, c, witness(c)) == c for c in CURVES)
        assert curves_fixed == fixes_all(A, sample_vertices(3))


def test_minimal_vertices_preserved():
    g = ball(N3, T0, 2, 5)
    cs = [c for c in enumerate_circuits(g, 5, interior_only=True) if len(c) == 5]
    rng = random.Random(11)
    for _ in range(10):
        A = induced_automorphism(from_word(random_word(rng, 6)))
        for c in cs[:8]:
            d = Circuit.from_vertices(N3, [A(v) for v in c.vertices])
            for v in c.vertices:
                assert is_minimal(v, c) == is_minimal(A(v), d)


def test_one_sided_degree():
    assert one_sided_degree(T0, N3) == 3
    assert one_sided_degree(V1(S(2, 3)), N3) == 1
    assert one_sided_degree(Rim(4), FanOracle()) == 2


@pytest.mark.parametrize(
    "oracle,expected", [(N3Oracle(), (3, 0)), (FanOracle(), (2, 1)), (N12Oracle(), (1, 2))], ids=["n3", "fan", "n12"]
)
def test_signature(oracle, expected):
    sig = signature(oracle)
    assert (sig["g"], sig["b"]) == expected
