"""Exact Farey graph on Q u {inf}, its triangles and the dual trivalent tree.

Slopes are normalised coprime pairs ``(p, q)`` with ``q >= 0`` and infinity
stored as ``(1, 0)``.  Two slopes are adjacent when ``|p*s - q*r| == 1``.

Canonical order on slopes is the *height* key ``(q, |p|, p)``.  It agrees with
sorting by denominator first, and unlike plain ``(q, p)`` it well-orders the
neighbours of infinity (all of which have ``q == 1``), so infinite neighbour
sets can be streamed in canonical order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from pantsgraph.loops import Move, splice

__all__ = [
    "Slope",
    "FareyTriangle",
    "INF",
    "ZERO",
    "ONE",
    "MINUS_ONE",
    "ROOTS",
    "normalize",
    "is_adjacent",
    "common_neighbors",
    "parents",
    "mediant",
    "farey_neighbors",
    "triangles_containing",
    "tree_neighbors",
    "contract_farey_loop",
    "contract_farey_cycle",
    "replay_farey_moves",
]


@dataclass(frozen=True, slots=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        if self.q < 0 or gcd(self.p, self.q) != 1 or (self.q == 0 and self.p != 1):
            raise ValueError(f"({self.p}, {self.q}) is not a normalized slope; use normalize()")

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.q, abs(self.p), self.p)

    def __lt__(self, other: "Slope") -> bool:
        return self.key < other.key

    def __le__(self, other: "Slope") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Slope") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Slope") -> bool:
        return self.key >= other.key

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def __repr__(self) -> str:
        return f"Slope({self.p}/{self.q})"

    @classmethod
    def parse(cls, text: str) -> "Slope":
        """Parse ``"p/q"``, an integer ``"p"`` or ``"inf"``."""
        text = text.strip()
        if text.lower() in ("inf", "oo", "infinity"):
            return INF
        if "/" in text:
            num, den = text.split("/", 1)
            return normalize(int(num), int(den))
        return normalize(int(text), 1)


def normalize(p: int, q: int) -> Slope:
    if p == 0 and q == 0:
        raise ValueError("(0, 0) does not define a slope")
    if q == 0:
        return Slope(1, 0)
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return Slope(p, q)


INF = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)
MINUS_ONE = Slope(-1, 1)
ROOTS = frozenset({ZERO, INF, ONE, MINUS_ONE})


def _det(a: Slope, b: Slope) -> int:
    return a.p * b.q - a.q * b.p


def is_adjacent(a: Slope, b: Slope) -> bool:
    return abs(_det(a, b)) == 1


def _require_adjacent(a: Slope, b: Slope) -> None:
    if not is_adjacent(a, b):
        raise ValueError(f"{a} and {b} are not Farey-adjacent")


def common_neighbors(a: Slope, b: Slope) -> frozenset[Slope]:
    """The two third vertices of the Farey triangles on the edge ``ab``."""
    _require_adjacent(a, b)
    return frozenset({normalize(a.p + b.p, a.q + b.q), normalize(a.p - b.p, a.q - b.q)})


def mediant(a: Slope, b: Slope) -> Slope:
    _require_adjacent(a, b)
    return normalize(a.p + b.p, a.q + b.q)


def parents(s: Slope) -> tuple[Slope, Slope]:
    """The two neighbours of ``s`` of smaller height, in canonical order.

    ``s`` is their mediant (up to sign), so they are adjacent to each other.
    """
    if s in ROOTS:
        raise ValueError(f"{s} is a root slope and has no parents")
    p, q = s.p, s.q
    if q == 1:
        sign = 1 if p > 0 else -1
        pair = (INF, Slope(p - sign, 1))
    else:
        t = pow(p, -1, q)  # p*t - q*r == 1 with 0 < t < q
        r = (p * t - 1) // q
        pair = (normalize(r, t), normalize(p - r, q - t))
    return tuple(sorted(pair))  # type: ignore[return-value]


def farey_neighbors(s: Slope) -> Iterator[Slope]:
    """Stream every Farey neighbour of ``s`` in canonical (height) order."""
    if s.is_infinite:
        yield ZERO
        for n in itertools.count(1):
            yield Slope(-n, 1)
            yield Slope(n, 1)
    p, q = s.p, s.q
    if q == 1:
        t0, r0 = 0, -1  # p*0 - 1*(-1) == 1
    else:
        t0 = pow(p, -1, q)
        r0 = (p * t0 - 1) // q
    # every neighbour is (r0 + k p)/(t0 + k q) for some integer k
    emitted: set[Slope] = set()
    pending: list[Slope] = []
    k_done = -1
    K = 4
    while True:
        for k in range(k_done + 1, K + 1):
            for kk in {k, -k}:
                pending.append(normalize(r0 + kk * p, t0 + kk * q))
        k_done = K
        # any k with |k| > K has denominator >= (K+1)q - t0
        bound = (K + 1) * q - t0
        pending.sort()
        keep = []
        for n in pending:
            if n.q < bound:
                if n not in emitted:
                    emitted.add(n)
                    yield n
            else:
                keep.append(n)
        pending = keep
        K *= 2


@dataclass(frozen=True, slots=True)
class FareyTriangle:
    vertices: tuple[Slope, Slope, Slope]

    def __post_init__(self):
        a, b, c = self.vertices
        if tuple(sorted(self.vertices)) != self.vertices:
            raise ValueError("triangle vertices must be stored in canonical order; use FareyTriangle.of")
        if not (is_adjacent(a, b) and is_adjacent(b, c) and is_adjacent(a, c)):
            raise ValueError(f"{a}, {b}, {c} do not span a Farey triangle")

    @classmethod
    def of(cls, *slopes: Slope | Iterable[Slope]) -> "FareyTriangle":
        if len(slopes) == 1:
            slopes = tuple(slopes[0])  # type: ignore[arg-type]
        if len(set(slopes)) != 3:
            raise ValueError("a Farey triangle needs three distinct slopes")
        return cls(tuple(sorted(slopes)))  # type: ignore[arg-type]

    @property
    def key(self) -> tuple:
        return tuple(v.key for v in self.vertices)

    def __lt__(self, other: "FareyTriangle") -> bool:
        return self.key < other.key

    def __contains__(self, s: object) -> bool:
        return s in self.vertices

    def __iter__(self) -> Iterator[Slope]:
        return iter(self.vertices)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.vertices)

    def opposite(self, s: Slope) -> tuple[Slope, Slope]:
        """The edge of the triangle not containing ``s``."""
        rest = tuple(v for v in self.vertices if v != s)
        if len(rest) != 2:
            raise ValueError(f"{s} is not a vertex of {self}")
        return rest  # type: ignore[return-value]

    def flip(self, s: Slope) -> "FareyTriangle":
        """The other triangle on the edge opposite to ``s``."""
        a, b = self.opposite(s)
        (other,) = common_neighbors(a, b) - {s}
        return FareyTriangle.of(a, b, other)


def tree_neighbors(T: FareyTriangle) -> frozenset[FareyTriangle]:
    return frozenset(T.flip(s) for s in T.vertices)


def triangles_containing(s: Slope) -> Iterator[FareyTriangle]:
    """Stream the Farey triangles containing ``s`` in canonical order.

    Order is lexicographic on the sorted vertex keys.  Triangles are released
    once every neighbour of height up to the current horizon has been seen;
    any unseen triangle then sorts after them (see module notes).
    """
    seen: set[FareyTriangle] = set()
    pending: list[FareyTriangle] = []
    for u in farey_neighbors(s):
        for c in common_neighbors(s, u):
            T = FareyTriangle.of(s, u, c)
            if T not in seen:
                seen.add(T)
                pending.append(T)
        # every unseen triangle has both non-s vertices above u, so its least
        # vertex exceeds the least vertex of any triangle released here
        pending.sort()
        ready = [T for T in pending if min(T.opposite(s)) <= u]
        if ready:
            ready_set = set(ready)
            pending = [T for T in pending if T not in ready_set]
            yield from ready


# -- loop contraction -------------------------------------------------------

def _rank(s: Slope) -> tuple[int, int, int]:
    # peak choice: larger denominator, then larger |p|, then sign
    return (s.q, abs(s.p), s.p)


def _find_backtrack(cycle: list) -> int | None:
    n = len(cycle)
    if n == 2:
        return 0
    for i in range(n):
        if n > 2 and cycle[i] == cycle[(i + 2) % n]:
            return i
    return None


def _check_closed_walk(loop: list[Slope]) -> list[Slope]:
    if not loop:
        raise ValueError("empty loop")
    if len(loop) > 1 and loop[0] != loop[-1]:
        raise ValueError("loop is not closed: first and last entries differ")
    cycle = list(loop[:-1]) if len(loop) > 1 else list(loop)
    n = len(cycle)
    for i in range(n if n > 1 else 0):
        a, b = cycle[i], cycle[(i + 1) % n]
        if not is_adjacent(a, b):
            raise ValueError(f"consecutive loop entries {a}, {b} are not adjacent")
    return cycle


def contract_farey_cycle(cycle: list[Slope]) -> tuple[list[Move], Slope]:
    """Contract a cyclic edge-loop of slopes; returns (moves, final vertex).

    ``cycle`` lists the vertices once (no repeated base point).  Moves use the
    rotate-then-splice semantics of :func:`pantsgraph.loops.splice`.
    """
    cycle = list(cycle)
    moves: list[Move] = []
    while len(cycle) > 1:
        i = _find_backtrack(cycle)
        if i is not None:
            moves.append(Move("backtrack", i))
            cycle = splice(cycle, i, 2, [cycle[i]])
            continue
        n = len(cycle)
        top = max(range(n), key=lambda j: (_rank(cycle[j]), -j))
        s = cycle[top]
        if s not in ROOTS:
            u, w = cycle[top - 1], cycle[(top + 1) % n]
            # loop neighbours of a peak have smaller height, so they are its parents
            assert {u, w} == set(parents(s)), (s, u, w)
            pos = (top - 1) % n
            moves.append(Move("triangle", pos, cell=FareyTriangle.of(u, s, w)))
            before = sorted((_rank(x) for x in cycle), reverse=True)
            cycle = splice(cycle, pos, 2, [u, w])
            after = sorted((_rank(x) for x in cycle), reverse=True)
            assert after < before
            continue
        # base case: the subgraph on {0, 1, -1, inf} is two triangles glued
        # along 0--inf; some vertex always spans a triangle with its neighbours
        for j in range(n):
            u, v, w = cycle[j], cycle[(j + 1) % n], cycle[(j + 2) % n]
            if is_adjacent(u, w):
                moves.append(Move("triangle", j, cell=FareyTriangle.of(u, v, w)))
                cycle = splice(cycle, j, 2, [u, w])
                break
        else:  # pragma: no cover - excluded by the structure of the base graph
            raise AssertionError(f"no reducible position in base loop {cycle}")
    return moves, cycle[0]


def contract_farey_loop(loop: list[Slope]) -> list[Move]:
    """Null-homotopy certificate for a closed edge-loop in the Farey graph.

    ``loop`` is closed (first entry repeated at the end).  Each move is a
    backtrack removal ``a-v-a -> a`` or a triangle move ``a-v-b -> a-b``.
    """
    cycle = _check_closed_walk(loop)
    moves, _ = contract_farey_cycle(cycle)
    return moves


def replay_farey_moves(loop: list[Slope], moves: list[Move]) -> list[Slope]:
    """Apply ``moves`` to a closed loop, checking each one; returns the final cycle."""
    cycle = _check_closed_walk(loop)
    for idx, m in enumerate(moves):
        n = len(cycle)
        if not 0 <= m.position < n:
            raise ValueError(f"move {idx}: position {m.position} out of range")
        if m.kind == "backtrack":
            a, b, c = cycle[m.position], cycle[(m.position + 1) % n], cycle[(m.position + 2) % n]
            if n < 2 or a != c:
                raise ValueError(f"move {idx}: no backtrack at {m.position}")
            cycle = splice(cycle, m.position, 2, [a])
        elif m.kind == "triangle":
            a, v, b = cycle[m.position], cycle[(m.position + 1) % n], cycle[(m.position + 2) % n]
            T = m.cell
            if not isinstance(T, FareyTriangle) or set(T.vertices) != {a, v, b}:
                raise ValueError(f"move {idx}: cell does not match the loop segment")
            cycle = splice(cycle, m.position, 2, [a, b])
        else:
            raise ValueError(f"move {idx}: unsupported kind {m.kind!r}")
    return cycle
