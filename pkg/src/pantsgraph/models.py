"""Exact lazy oracles for the pants graphs of N_{1,2}, N_{2,1} and N_3.

Every oracle answers the same small set of queries:

``label(v)``            the multicurve of a vertex (frozenset of curves)
``edge(u, v)``          the labeled move from ``u`` to ``v``, or ``None``
``neighbor_stream(v)``  all incident moves in canonical order (may be infinite)
``has_finite_degree``   whether that stream terminates
``incident(v)``         the complete list; raises :class:`InfiniteDegree` otherwise
``window(v, width)``    the complete list, or the first ``width`` stream items
``type3_edges(v)``      incident type-3 moves (finite in every model)

Curves of N_3 are coded by slopes: ``T:s`` is the two-sided curve with slope
``s``, ``O:s`` the one-sided curve paired with it (the unique one-sided curve
disjoint from ``T:s``) and ``A0`` the one-sided curve with orientable
complement.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd
from typing import Any, Iterator

from pantsgraph.farey import (
    FareyTriangle,
    Slope,
    common_neighbors,
    farey_neighbors,
    is_adjacent,
    tree_neighbors,
    triangles_containing,
)
from pantsgraph.graphs import InfiniteDegree, LabeledEdge, LabeledGraph, make_edge

# -- curves ------------------------------------------------------------------

ALPHA_ZERO = "AlphaZero"
TWO_SIDED = "TwoSided"
ONE_SIDED = "OneSided"
_CURVE_RANK = {ALPHA_ZERO: 0, TWO_SIDED: 1, ONE_SIDED: 2}
_CURVE_CODE = {ALPHA_ZERO: "A0", TWO_SIDED: "T", ONE_SIDED: "O"}


@dataclass(frozen=True)
class CurveN3:
    kind: str
    slope: Slope | None = None

    def __post_init__(self):
        if self.kind not in _CURVE_RANK:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if (self.kind == ALPHA_ZERO) != (self.slope is None):
            raise ValueError("only AlphaZero comes without a slope")

    @property
    def one_sided(self) -> bool:
        return self.kind != TWO_SIDED

    @property
    def key(self) -> tuple:
        return (_CURVE_RANK[self.kind],) + (self.slope.key if self.slope else ())

    def __str__(self) -> str:
        if self.slope is None:
            return "A0"
        return f"{_CURVE_CODE[self.kind]}:{self.slope}"

    @classmethod
    def parse(cls, text: str) -> "CurveN3":
        text = text.strip()
        if text in ("A0", "a0", "alpha0"):
            return A0
        code, _, rest = text.partition(":")
        kinds = {"T": TWO_SIDED, "O": ONE_SIDED}
        if code not in kinds or not rest:
            raise ValueError(f"cannot parse curve {text!r}; use A0, T:p/q or O:p/q")
        return cls(kinds[code], Slope.parse(rest))


A0 = CurveN3(ALPHA_ZERO)


def two_sided(s: Slope) -> CurveN3:
    return CurveN3(TWO_SIDED, s)


def one_sided(s: Slope) -> CurveN3:
    return CurveN3(ONE_SIDED, s)


def curv_n3_adjacent(c1: CurveN3, c2: CurveN3) -> bool:
    """Disjointness of two distinct curves on N_3 under the slope coding."""
    if c1 == c2:
        raise ValueError("curv_n3_adjacent needs two distinct curves")
    kinds = {c1.kind, c2.kind}
    if ALPHA_ZERO in kinds:
        other = c2 if c1.kind == ALPHA_ZERO else c1
        return other.kind == TWO_SIDED
    if kinds == {TWO_SIDED}:
        return False
    if kinds == {TWO_SIDED, ONE_SIDED}:
        return c1.slope == c2.slope
    return is_adjacent(c1.slope, c2.slope)  # type: ignore[arg-type]


@dataclass(frozen=True)
class AbstractCurve:
    """A named curve with a sidedness flag, for models without slope coding."""

    name: str
    one_sided: bool
    order: int = 0

    @property
    def key(self) -> tuple:
        return (self.order, self.name)

    def __str__(self) -> str:
        return self.name


# -- vertices ----------------------------------------------------------------

_V_RANK = {"V1": 1, "V2": 2, "V3": 3}


@dataclass(frozen=True)
class PantsVertexN3:
    kind: str
    data: Any  # Slope for V1/V2, FareyTriangle for V3

    def __post_init__(self):
        if self.kind in ("V1", "V2"):
            if not isinstance(self.data, Slope):
                raise TypeError(f"{self.kind} needs a Slope")
        elif self.kind == "V3":
            if not isinstance(self.data, FareyTriangle):
                raise TypeError("V3 needs a FareyTriangle")
        else:
            raise ValueError(f"unknown vertex kind {self.kind!r}")

    @property
    def key(self) -> tuple:
        return (0, _V_RANK[self.kind], self.data.key)

    @property
    def slopes(self) -> tuple[Slope, ...]:
        return tuple(self.data) if self.kind == "V3" else (self.data,)

    def __str__(self) -> str:
        return f"{self.kind}:{self.data}"

    def __repr__(self) -> str:
        return f"PantsVertexN3({self})"


def V1(s: Slope) -> PantsVertexN3:
    return PantsVertexN3("V1", s)


def V2(s: Slope) -> PantsVertexN3:
    return PantsVertexN3("V2", s)


def V3(T: FareyTriangle | tuple) -> PantsVertexN3:
    if not isinstance(T, FareyTriangle):
        T = FareyTriangle.of(T)
    return PantsVertexN3("V3", T)


@dataclass(frozen=True)
class FanVertex:
    kind: str  # "centre" or "rim"
    index: int | None = None

    def __post_init__(self):
        if self.kind not in ("centre", "rim"):
            raise ValueError(f"unknown fan vertex kind {self.kind!r}")
        if (self.kind == "rim") != (self.index is not None):
            raise ValueError("rim vertices carry an index, the centre does not")

    @property
    def key(self) -> tuple:
        if self.kind == "centre":
            return (1, 0)
        return (1, 1, abs(self.index), self.index)  # type: ignore[arg-type]

    @property
    def slopes(self) -> tuple:
        return ()

    def __str__(self) -> str:
        return "centre" if self.kind == "centre" else f"rim:{self.index}"


CENTRE = FanVertex("centre")


def Rim(i: int) -> FanVertex:
    return FanVertex("rim", i)


@dataclass(frozen=True)
class N12Vertex:
    index: int

    def __post_init__(self):
        if self.index not in (0, 1):
            raise ValueError("N_{1,2} has exactly two pants decompositions")

    kind = "n12"

    @property
    def key(self) -> tuple:
        return (2, self.index)

    @property
    def slopes(self) -> tuple:
        return ()

    def __str__(self) -> str:
        return f"n12:{self.index}"


def parse_vertex(text: str) -> Any:
    """Parse a vertex id of any model (``V1:0/1``, ``V3:0/1,1/1,1/2``, ``rim:5``, ...)."""
    text = text.strip()
    head, _, rest = text.partition(":")
    if head in ("V1", "V2"):
        return PantsVertexN3(head, Slope.parse(rest))
    if head == "V3":
        return V3(tuple(Slope.parse(x) for x in rest.split(",")))
    if text == "centre":
        return CENTRE
    if head == "rim":
        return Rim(int(rest))
    if head == "n12":
        return N12Vertex(int(rest))
    raise ValueError(f"cannot parse vertex id {text!r}")


def vertex_multicurve(v: PantsVertexN3) -> frozenset:
    if v.kind == "V1":
        return frozenset({A0, two_sided(v.data)})
    if v.kind == "V2":
        return frozenset({one_sided(v.data), two_sided(v.data)})
    return frozenset(one_sided(s) for s in v.data)


def psi(v: PantsVertexN3) -> PantsVertexN3:
    """The perfect matching V1 -> V2 given by the type-3 edges."""
    if v.kind != "V1":
        raise ValueError(f"psi is defined on V1 vertices, got {v}")
    return V2(v.data)


def psi_inv(v: PantsVertexN3) -> PantsVertexN3:
    if v.kind != "V2":
        raise ValueError(f"psi_inv is defined on V2 vertices, got {v}")
    return V1(v.data)


# -- oracles -----------------------------------------------------------------

class GraphOracle:
    name = "oracle"

    def label(self, v: Any) -> frozenset:
        raise NotImplementedError

    def edge(self, u: Any, v: Any) -> LabeledEdge | None:
        raise NotImplementedError

    def neighbor_stream(self, v: Any) -> Iterator[LabeledEdge]:
        raise NotImplementedError

    def has_finite_degree(self, v: Any) -> bool:
        raise NotImplementedError

    def type3_edges(self, v: Any) -> list[LabeledEdge]:
        raise NotImplementedError

    def default_base(self) -> Any:
        raise NotImplementedError

    def sample_vertex(self, rng: random.Random, max_den: int = 8) -> Any:
        raise NotImplementedError

    def incident(self, v: Any) -> list[LabeledEdge]:
        if not self.has_finite_degree(v):
            raise InfiniteDegree(f"{v} has infinitely many neighbours")
        return list(self.neighbor_stream(v))

    def window(self, v: Any, width: int) -> list[LabeledEdge]:
        if self.has_finite_degree(v):
            return self.incident(v)
        return list(itertools.islice(self.neighbor_stream(v), width))

    def parse_vertex(self, text: str) -> Any:
        return parse_vertex(text)

    def _edge(self, u: Any, v: Any, t: int) -> LabeledEdge:
        return make_edge(self.label, u, v, t)


class N3Oracle(GraphOracle):
    """The pants graph of the closed surface N_3, built on the Farey graph."""

    name = "n3"

    def label(self, v: PantsVertexN3) -> frozenset:
        return vertex_multicurve(v)

    def has_finite_degree(self, v: PantsVertexN3) -> bool:
        return v.kind == "V3"

    def default_base(self) -> PantsVertexN3:
        return V3(FareyTriangle.of(Slope(0, 1), Slope(1, 1), Slope(1, 2)))

    def edge(self, u: PantsVertexN3, v: PantsVertexN3) -> LabeledEdge | None:
        t = self._edge_type(u, v)
        return None if t is None else self._edge(u, v, t)

    @staticmethod
    def _edge_type(u: PantsVertexN3, v: PantsVertexN3) -> int | None:
        kinds = (u.kind, v.kind)
        if kinds == ("V1", "V1"):
            return 1 if is_adjacent(u.data, v.data) else None
        if kinds in (("V1", "V2"), ("V2", "V1")):
            return 3 if u.data == v.data else None
        if kinds == ("V2", "V3"):
            return 4 if u.data in v.data else None
        if kinds == ("V3", "V2"):
            return 4 if v.data in u.data else None
        if kinds == ("V3", "V3"):
            return 3 if v.data in tree_neighbors(u.data) else None
        return None

    def neighbor_stream(self, v: PantsVertexN3) -> Iterator[LabeledEdge]:
        if v.kind == "V1":
            yield self._edge(v, V2(v.data), 3)
            for s in farey_neighbors(v.data):
                yield self._edge(v, V1(s), 1)
        elif v.kind == "V2":
            yield self._edge(v, V1(v.data), 3)
            for T in triangles_containing(v.data):
                yield self._edge(v, V3(T), 4)
        else:
            for s in v.data:
                yield self._edge(v, V2(s), 4)
            for T in sorted(tree_neighbors(v.data)):
                yield self._edge(v, V3(T), 3)

    def common_neighbors(self, u: PantsVertexN3, v: PantsVertexN3) -> list[PantsVertexN3]:
        """Exact common neighbours, also for two infinite-degree vertices."""
        for x, y in ((u, v), (v, u)):
            if self.has_finite_degree(x):
                out = [e.target for e in self.incident(x) if self.edge(e.target, y) is not None]
                return sorted(out, key=lambda w: w.key)
        if u.kind == v.kind == "V1" and is_adjacent(u.data, v.data):
            return sorted((V1(s) for s in common_neighbors(u.data, v.data)), key=lambda w: w.key)
        # V1(s) and V2(s') share no neighbour: the only V2 next to V1(s) is V2(s),
        # and V2 vertices meet V1 vertices only through that matching
        return []

    def type3_edges(self, v: PantsVertexN3) -> list[LabeledEdge]:
        if v.kind == "V1":
            return [self._edge(v, V2(v.data), 3)]
        if v.kind == "V2":
            return [self._edge(v, V1(v.data), 3)]
        return [e for e in self.neighbor_stream(v) if e.move_type == 3]

    def sample_vertex(self, rng: random.Random, max_den: int = 8) -> PantsVertexN3:
        s = random_slope(rng, max_den)
        kind = rng.choice(("V1", "V2", "V3"))
        if kind == "V3":
            u = next(itertools.islice(farey_neighbors(s), rng.randrange(4), None))
            w = sorted(common_neighbors(s, u))[rng.randrange(2)]
            return V3(FareyTriangle.of(s, u, w))
        return PantsVertexN3(kind, s)


def random_slope(rng: random.Random, max_den: int = 8) -> Slope:
    """A seeded slope with denominator at most ``max_den`` (infinity included)."""
    while True:
        q = rng.randrange(0, max_den + 1)
        if q == 0:
            if rng.random() < 0.5:
                return Slope(1, 0)
            continue
        p = rng.randrange(-2 * q, 2 * q + 1)
        if gcd(p, q) == 1:
            return Slope(p, q)


_ALPHA = AbstractCurve("alpha", one_sided=False, order=0)


def fan_curve(i: int) -> AbstractCurve:
    """The one-sided curve obtained from the base curve by ``i`` twists along alpha."""
    return AbstractCurve(f"beta[{i}]", one_sided=True, order=1 + 2 * abs(i) + (i < 0))


def _rim_order() -> Iterator[int]:
    yield 0
    for n in itertools.count(1):
        yield -n
        yield n


class FanOracle(GraphOracle):
    """The infinite fan: the pants graph of N_{2,1}."""

    name = "fan"

    def label(self, v: FanVertex) -> frozenset:
        if v.kind == "centre":
            return frozenset({_ALPHA})
        return frozenset({fan_curve(v.index), fan_curve(v.index + 1)})  # type: ignore[operator]

    def has_finite_degree(self, v: FanVertex) -> bool:
        return v.kind == "rim"

    def default_base(self) -> FanVertex:
        return CENTRE

    def edge(self, u: FanVertex, v: FanVertex) -> LabeledEdge | None:
        if u == v:
            return None
        if CENTRE in (u, v):
            return self._edge(u, v, 4)
        if abs(u.index - v.index) == 1:  # type: ignore[operator]
            return self._edge(u, v, 3)
        return None

    def neighbor_stream(self, v: FanVertex) -> Iterator[LabeledEdge]:
        if v.kind == "centre":
            for i in _rim_order():
                yield self._edge(v, Rim(i), 4)
            return
        yield self._edge(v, CENTRE, 4)
        for u in sorted((Rim(v.index - 1), Rim(v.index + 1)), key=lambda x: x.key):  # type: ignore[operator]
            yield self._edge(v, u, 3)

    def type3_edges(self, v: FanVertex) -> list[LabeledEdge]:
        if v.kind == "centre":
            return []
        return [e for e in self.neighbor_stream(v) if e.move_type == 3]

    def sample_vertex(self, rng: random.Random, max_den: int = 8) -> FanVertex:
        if rng.random() < 0.2:
            return CENTRE
        return Rim(rng.randrange(-max_den, max_den + 1))


def fan_neighbors(v: FanVertex, width: int = 16) -> list[LabeledEdge]:
    """Labeled neighbours of a fan vertex; the centre's list is its first ``width`` rims."""
    return FanOracle().window(v, width)


class N12Oracle(GraphOracle):
    """The pants graph of N_{1,2}: two one-sided curves joined by a type-3 move."""

    name = "n12"
    _curves = (AbstractCurve("gamma0", True, 0), AbstractCurve("gamma1", True, 1))

    def label(self, v: N12Vertex) -> frozenset:
        return frozenset({self._curves[v.index]})

    def has_finite_degree(self, v: N12Vertex) -> bool:
        return True

    def default_base(self) -> N12Vertex:
        return N12Vertex(0)

    def edge(self, u: N12Vertex, v: N12Vertex) -> LabeledEdge | None:
        return None if u == v else self._edge(u, v, 3)

    def neighbor_stream(self, v: N12Vertex) -> Iterator[LabeledEdge]:
        yield self._edge(v, N12Vertex(1 - v.index), 3)

    def type3_edges(self, v: N12Vertex) -> list[LabeledEdge]:
        return list(self.neighbor_stream(v))

    def sample_vertex(self, rng: random.Random, max_den: int = 8) -> N12Vertex:
        return N12Vertex(rng.randrange(2))


def n12_graph() -> LabeledGraph:
    o = N12Oracle()
    a, b = N12Vertex(0), N12Vertex(1)
    g = LabeledGraph({a: o.label(a), b: o.label(b)}, name="n12")
    g.add_edge(o.edge(a, b))  # type: ignore[arg-type]
    return g


def n3_neighbors(v: PantsVertexN3, width: int = 16) -> list[LabeledEdge]:
    """Labeled neighbours of an N_3 vertex; infinite lists are cut to ``width``."""
    return N3Oracle().window(v, width)


MODELS = {"n3": N3Oracle, "fan": FanOracle, "n12": N12Oracle}


def get_model(name: str) -> GraphOracle:
    try:
        return MODELS[name]()
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
