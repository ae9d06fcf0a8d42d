"""Slope symmetries of the N_3 model, the induced curve maps, and signatures.

A :class:`SlopeMap` is an integral matrix of determinant +-1 acting on slopes
by Moebius transformations.  Words over ``T`` ([[1,1],[0,1]]), its inverse
``t`` and ``R`` ([[0,1],[1,0]]) are read as matrix products, so the last
letter acts first.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd
from typing import Any, Callable, Iterable, Iterator

from pantsgraph.farey import FareyTriangle, Slope, farey_neighbors, normalize, triangles_containing
from pantsgraph.graphs import ball
from pantsgraph.models import (
    A0,
    ALPHA_ZERO,
    CurveN3,
    N3Oracle,
    PantsVertexN3,
    V1,
    V2,
)
from pantsgraph.structure import classify_edge

VertexMap = Callable[[Any], Any]


@dataclass(frozen=True)
class SlopeMap:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.det) != 1:
            raise ValueError(f"matrix {self.rows} has determinant {self.det}, expected +-1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def rows(self) -> tuple:
        return ((self.a, self.b), (self.c, self.d))

    @classmethod
    def of(cls, rows) -> "SlopeMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __matmul__(self, o: "SlopeMap") -> "SlopeMap":
        return SlopeMap(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "SlopeMap":
        k = self.det  # +-1, so dividing is multiplying
        return SlopeMap(self.d * k, -self.b * k, -self.c * k, self.a * k)

    def __call__(self, s: Slope) -> Slope:
        return normalize(self.a * s.p + self.b * s.q, self.c * s.p + self.d * s.q)

    def triangle(self, T: FareyTriangle) -> FareyTriangle:
        return FareyTriangle.of(self(s) for s in T)

    def curve(self, c: CurveN3) -> CurveN3:
        if c.kind == ALPHA_ZERO:
            return c
        return CurveN3(c.kind, self(c.slope))  # type: ignore[arg-type]

    def is_projective_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


IDENTITY = SlopeMap(1, 0, 0, 1)
GENERATORS = {"T": SlopeMap(1, 1, 0, 1), "t": SlopeMap(1, -1, 0, 1), "R": SlopeMap(0, 1, 1, 0)}


def from_word(word: str) -> SlopeMap:
    m = IDENTITY
    for letter in word:
        try:
            m = m @ GENERATORS[letter]
        except KeyError:
            raise ValueError(f"unknown generator {letter!r} in word {word!r}; use T, t, R") from None
    return m


def words(max_len: int, alphabet: str = "TtR") -> Iterator[str]:
    """All words up to ``max_len`` letters, shortest first."""
    for n in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield "".join(w)


def random_word(rng: random.Random, max_len: int) -> str:
    return "".join(rng.choice("TtR") for _ in range(rng.randint(0, max_len)))


def induced_automorphism(m: SlopeMap) -> VertexMap:
    """Vertex map of the N_3 model induced by a slope symmetry."""

    def A(v: PantsVertexN3) -> PantsVertexN3:
        if v.kind == "V3":
            return PantsVertexN3("V3", m.triangle(v.data))
        return PantsVertexN3(v.kind, m(v.data))

    A.matrix = m  # type: ignore[attr-defined]
    return A


def compose(A: VertexMap, B: VertexMap) -> VertexMap:
    """A after B."""
    return lambda v: A(B(v))


def witness(c: CurveN3) -> PantsVertexN3:
    """A canonical vertex whose multicurve contains ``c``."""
    if c.kind == ALPHA_ZERO:
        return V1(Slope(0, 1))
    if c.kind == "TwoSided":
        return V1(c.slope)  # type: ignore[arg-type]
    return V2(c.slope)  # type: ignore[arg-type]


def witnesses(c: CurveN3, limit: int = 4) -> list[PantsVertexN3]:
    """Several vertices containing ``c`` (all of them when there are few)."""
    oracle = N3Oracle()
    if c.kind == ALPHA_ZERO:
        return [V1(s) for s in itertools.islice(farey_neighbors(Slope(0, 1)), limit)]
    if c.kind == "TwoSided":
        return [V1(c.slope), V2(c.slope)]  # type: ignore[arg-type]
    out = [V2(c.slope)]  # type: ignore[arg-type]
    out += [e.target for e in oracle.window(V2(c.slope), limit + 1) if e.target.kind == "V3"]  # type: ignore[arg-type]
    return out[: limit + 1]


def phi(A: VertexMap, alpha: Any, X: Any, oracle: Any | None = None, probes: int = 4, scan: int = 32) -> Any:
    """Image of the curve ``alpha`` under the curve map induced by the vertex map ``A``.

    F(X, alpha) is sampled by neighbours Y of X that give up exactly alpha;
    the answer is the curve beta of A(X) such that every image A(Y) still
    contains A(X) - beta.  ``A`` is used only as a map on vertices.
    """
    oracle = oracle or N3Oracle()
    lx = oracle.label(X)
    if alpha not in lx:
        raise ValueError(f"{alpha} is not a curve of {X}")
    ys = []
    for e in itertools.islice(oracle.neighbor_stream(X), scan):
        if e.replaced == {alpha}:
            ys.append(e.target)
            if len(ys) >= probes:
                break
    if not ys:
        raise ValueError(f"no move at {X} replaces {alpha}")
    AX = A(X)
    lax = oracle.label(AX)
    images = [oracle.label(A(Y)) for Y in ys]
    hits = [b for b in lax if all(lax - {b} <= lab for lab in images)]
    if len(hits) != 1:
        raise ValueError(f"image of {alpha} is not determined ({len(hits)} candidates)")
    return hits[0]


def phi_curve_map(A: VertexMap, oracle: Any | None = None) -> Callable[[Any], Any]:
    return lambda c: phi(A, c, witness(c), oracle)


def one_sided_degree(X: Any, oracle: Any) -> int:
    """Number of type-3 edges at X."""
    return len(oracle.type3_edges(X))


class Inconclusive(Exception):
    pass


def signature(oracle: Any, search_radius: int = 2, width: int = 8, probe_budget: int = 24) -> dict:
    """Recover (g, b) from the graph around the oracle's default base.

    g is the largest number of type-3 edges at an interior vertex, with types
    decided by :func:`classify_edge`; b is the number of Farey subgraphs
    through a maximising vertex, plus 3, minus g.
    """
    g = ball(oracle, oracle.default_base(), search_radius, width)
    interior = [v for v in g.vertices if g.is_interior(v)]
    if not interior:
        raise Inconclusive("no interior vertex in the search ball")
    degree = {}
    farey_edges = {}
    for v in interior:
        classes = [(e, classify_edge(oracle, (v, e.target), probe_budget)) for e in oracle.incident(v)]
        degree[v] = sum(1 for _, c in classes if c.predicted == "3")
        farey_edges[v] = [e for e, c in classes if c.predicted == "1|2"]
    gmax = max(degree.values())
    best = [v for v in interior if degree[v] == gmax]
    X = best[0]
    spans = {oracle.label(X) & oracle.label(e.target) for e in farey_edges[X]}
    return {
        "g": gmax,
        "b": len(spans) + 3 - gmax,
        "vertex": str(X),
        "farey_subgraphs": len(spans),
        "interior_vertices": len(interior),
    }


def sample_curves(max_den: int = 8) -> list[CurveN3]:
    """A0 and both curves of every slope with denominator at most ``max_den``."""
    slopes = [Slope(1, 0)]
    for q in range(1, max_den + 1):
        for p in range(-max_den, max_den + 1):
            if gcd(p, q) == 1:
                slopes.append(Slope(p, q))
    out = [A0]
    for s in slopes:
        out.append(CurveN3("TwoSided", s))
        out.append(CurveN3("OneSided", s))
    return out


def sample_vertices(max_den: int = 4) -> list[PantsVertexN3]:
    verts = []
    for c in sample_curves(max_den):
        if c.slope is None:
            continue
        s = c.slope
        if c.kind == "TwoSided":
            verts += [V1(s), V2(s)]
            verts += [PantsVertexN3("V3", T) for T in itertools.islice(triangles_containing(s), 2)]
    return list(dict.fromkeys(verts))


def fixes_all(f: Callable, items: Iterable) -> bool:
    return all(f(x) == x for x in items)
