"""Short circuits and paths in labeled pants graphs, and predicates on them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from pantsgraph.graphs import LabeledEdge, LabeledGraph, vkey

FAREY = "Farey"
FAN = "Fan"


class Unclassifiable(Exception):
    """A triangle fits neither the Farey nor the fan pattern."""


@dataclass(frozen=True)
class Circuit:
    """A cyclic (or, with ``closed=False``, open) sequence of distinct vertices.

    ``edges[i]`` is the move from ``vertices[i]`` to the next vertex.
    """

    vertices: tuple
    edges: tuple
    labels: tuple
    closed: bool = True

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("a circuit visits each vertex once")
        if self.closed and n < 3:
            raise ValueError("a circuit has at least three vertices")
        if len(self.edges) != (n if self.closed else n - 1):
            raise ValueError("edge list does not match the vertex list")
        for i, e in enumerate(self.edges):
            if e.source != self.vertices[i] or e.target != self.vertices[(i + 1) % n]:
                raise ValueError(f"edge {i} does not join consecutive vertices")

    @classmethod
    def from_vertices(cls, source: Any, vertices: Sequence, closed: bool = True) -> "Circuit":
        """Build from a vertex sequence, reading moves and labels from ``source``."""
        vs = tuple(vertices)
        n = len(vs)
        edges = []
        for i in range(n if closed else n - 1):
            e = source.edge(vs[i], vs[(i + 1) % n])
            if e is None:
                raise ValueError(f"{vs[i]} and {vs[(i + 1) % n]} are not adjacent")
            edges.append(e)
        return cls(vs, tuple(edges), tuple(source.label(v) for v in vs), closed)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def types(self) -> list[int]:
        return [e.move_type for e in self.edges]

    def label(self, v: Any) -> frozenset:
        return self.labels[self.vertices.index(v)]

    def edge(self, u: Any, v: Any) -> LabeledEdge | None:
        for e in self.edges:
            if (e.source, e.target) == (u, v):
                return e
            if (e.source, e.target) == (v, u):
                return e.reversed()
        return None

    def canonical(self) -> tuple:
        """Lexicographically least rotation/reflection of the vertex keys."""
        keys = [vkey(v) for v in self.vertices]
        if not self.closed:
            return min(tuple(keys), tuple(reversed(keys)))
        n = len(keys)
        best = None
        for seq in (keys, keys[::-1]):
            for r in range(n):
                cand = tuple(seq[r:] + seq[:r])
                if best is None or cand < best:
                    best = cand
        return best  # type: ignore[return-value]

    def as_graph(self) -> LabeledGraph:
        g = LabeledGraph(dict(zip(self.vertices, self.labels)))
        for e in self.edges:
            g.add_edge(e)
        return g

    def subpath(self, start: int, length: int) -> "Circuit":
        """The open path of ``length`` edges starting at vertex ``start``."""
        n = len(self.vertices)
        idx = [(start + j) % n for j in range(length + 1)]
        edges = tuple(self.edges[(start + j) % n] for j in range(length))
        return Circuit(tuple(self.vertices[i] for i in idx), edges, tuple(self.labels[i] for i in idx), closed=False)

    def __str__(self) -> str:
        body = " - ".join(str(v) for v in self.vertices)
        return f"({body})" if self.closed else body


def enumerate_circuits(graph: LabeledGraph, max_len: int, interior_only: bool = False) -> list[Circuit]:
    """All circuits of length 3..max_len in a finite labeled graph, up to symmetry.

    Each cycle is reported once, starting at its least vertex and oriented so
    that the second vertex is less than the last.  With ``interior_only`` only
    cycles through at least one interior (non-frontier) vertex are kept; every
    triangle on an edge at such a vertex lies in the ball, so counts are exact.
    """
    verts = graph.vertices
    allowed = set(verts)
    order = {v: i for i, v in enumerate(verts)}
    nbrs = {v: [u for u in graph.neighbors(v) if u in allowed] for v in verts}
    found = []

    def extend(path: list, on_path: set):
        last = path[-1]
        for u in nbrs[last]:
            if u == path[0]:
                if len(path) >= 3 and order[path[1]] < order[path[-1]]:
                    found.append(Circuit.from_vertices(graph, path))
            elif order[u] > order[path[0]] and u not in on_path and len(path) < max_len:
                path.append(u)
                on_path.add(u)
                extend(path, on_path)
                on_path.discard(u)
                path.pop()

    for s in verts:
        extend([s], {s})
    if interior_only:
        found = [c for c in found if any(graph.is_interior(v) for v in c.vertices)]
    found.sort(key=lambda c: (len(c), c.canonical()))
    return found


def classify_triangle(t: Circuit) -> str:
    if len(t) != 3 or not t.closed:
        raise ValueError("classify_triangle expects a circuit of length 3")
    types = t.types
    if len(set(types)) == 1 and types[0] in (1, 2):
        return FAREY
    if sorted(types) == [3, 4, 4]:
        tails = {e.tail for e in t.edges if e.move_type == 4}
        fours = [e for e in t.edges if e.move_type == 4]
        shared = fours[0].endpoints() & fours[1].endpoints()
        if tails == shared:
            return FAN
    raise Unclassifiable(f"triangle {t} has edge types {types}")


def _positions(c: Circuit) -> Iterable[int]:
    n = len(c.vertices)
    return range(n) if c.closed else range(1, n - 1)


def _same_f_graph(source: Any, U: Any, V: Any, W: Any) -> bool:
    """Whether the edges UV and VW lie in one Farey or fan subgraph."""
    lu, lv, lw = source.label(U), source.label(V), source.label(W)
    gone_u, gone_w = lv - lu, lv - lw
    if gone_u == gone_w and len(gone_u) == 1:
        (beta,) = gone_u
        # both moves replace the same two-sided curve, so both lie in F(V, beta)
        if not beta.one_sided:
            return True
    if sum(1 for c in lv if c.one_sided) >= 2:
        # V may sit on the rim of a fan F(C, alpha) for some type-4 move C -> V
        for e in source.incident(V):
            if e.move_type == 4 and e.tail == e.target:
                C = e.target
                core = source.label(C) - e.inserted
                if core <= lu and core <= lw:
                    return True
    return False


def is_alternating(c: Circuit, source: Any | None = None) -> bool:
    """No two consecutive edges lie in one Farey or fan subgraph.

    ``source`` provides labels and incident moves around the circuit (an
    oracle or a labeled graph); the circuit itself is used if omitted.
    """
    src = source if source is not None else c.as_graph()
    n = len(c.vertices)
    for i in _positions(c):
        U, V, W = c.vertices[i - 1], c.vertices[i], c.vertices[(i + 1) % n]
        if _same_f_graph(src, U, V, W):
            return False
    return True


def has_alternating_form(source: Any, X: Any, Y: Any, Z: Any) -> bool:
    """X - Y - Z keeps at Z what XY inserts, and keeps at X what YZ removes."""
    ly = source.label(Y)
    return not ((ly - source.label(X)) & (ly - source.label(Z)))


def is_two_tight(c: Circuit) -> bool:
    common = frozenset.intersection(*c.labels)
    return any(len(common) >= len(lab) - 2 for lab in c.labels)


def type4_potential(graph: LabeledGraph, X: Any) -> dict:
    """Net count of type-4 edges traversed forwards along a path from X.

    Raises if two paths disagree, so the count is path independent.
    """
    pot = {X: 0}
    stack = [X]
    while stack:
        v = stack.pop()
        for e in graph.incident(v):
            step = 0
            if e.move_type == 4:
                step = 1 if e.tail == v else -1
            u = e.target
            if u not in pot:
                pot[u] = pot[v] + step
                stack.append(u)
            elif pot[u] != pot[v] + step:
                raise AssertionError(f"type-4 count along paths from {X} to {u} is path dependent")
    return pot


def is_minimal_by_paths(v: Any, subgraph: LabeledGraph | Circuit) -> bool:
    g = subgraph.as_graph() if isinstance(subgraph, Circuit) else subgraph
    pot = type4_potential(g, v)
    if len(pot) != len(g):
        raise ValueError("subgraph is not connected")
    return all(p >= 0 for p in pot.values())


def is_minimal(v: Any, subgraph: LabeledGraph | Circuit) -> bool:
    """Whether v has least cardinality in the subgraph; cross-checked by type-4 counts."""
    g = subgraph.as_graph() if isinstance(subgraph, Circuit) else subgraph
    by_size = all(len(g.label(v)) <= len(g.label(u)) for u in g.vertices)
    by_paths = is_minimal_by_paths(v, g)
    assert by_size == by_paths, (v, by_size, by_paths)
    return by_size


def _rotations(c: Circuit):
    """All (vertices, edges) readings of a closed circuit, both orientations."""
    n = len(c.vertices)
    for r in range(n):
        vs = [c.vertices[(r + j) % n] for j in range(n)]
        es = [c.edges[(r + j) % n] for j in range(n)]
        yield vs, es
        rv = [vs[0]] + vs[:0:-1]
        re = [e.reversed() for e in reversed(es)]
        yield rv, re


def is_standard_pentagon(c: Circuit) -> bool:
    """X - V2(a1) - V1(a1) - V1(a2) - V2(a2) - X with X in V3 and a1 != a2 slopes of X."""
    if len(c) != 5 or not c.closed:
        return False
    for vs, es in _rotations(c):
        kinds = [getattr(v, "kind", None) for v in vs]
        if kinds != ["V3", "V2", "V1", "V1", "V2"]:
            continue
        X, b1, a1, a2, b2 = vs
        if not (b1.data == a1.data and b2.data == a2.data and a1.data != a2.data):
            continue
        if a1.data not in X.data or a2.data not in X.data:
            continue
        if [e.move_type for e in es] != [4, 3, 1, 3, 4]:
            continue
        if es[0].tail == b1 and es[4].tail == b2:
            return True
    return False


def _common_neighbors(source: Any, a: Any, b: Any) -> set:
    if isinstance(source, LabeledGraph):
        return set(source.common_neighbors(a, b))
    for x, y in ((a, b), (b, a)):
        if source.has_finite_degree(x):
            return {e.target for e in source.incident(x) if source.edge(e.target, y) is not None}
    raise ValueError(f"cannot list common neighbours of two infinite-degree vertices {a}, {b}")


_HEPTAGON_SHAPE = ("R", "S", "X", "Y", "Z", "P", "Q")


def _heptagon_shape(vs: list, es: list) -> bool:
    # es[i] joins vs[i] -> vs[i+1] in the order R S X Y Z P Q
    R, S, X, Y, Z, P, Q = vs
    rs, sx, xy, yz, zp, pq, qr = es
    return (
        xy.move_type == 4 and xy.tail == X
        and qr.move_type == 4 and qr.tail == R
        and zp.move_type == 3
        and all(e.move_type in (1, 2) for e in (rs, sx, yz, pq))
    )


def is_standard_heptagon(c: Circuit, source: Any) -> bool:
    """Heptagon of the standard shape whose path X -> Y - Z lies in no quadrangle."""
    if len(c) != 7 or not c.closed:
        return False
    for vs, es in _rotations(c):
        if not _heptagon_shape(vs, es):
            continue
        X, Y, Z = vs[2], vs[3], vs[4]
        if not (_common_neighbors(source, X, Z) - {Y}):
            return True
    return False


def is_tame(c: Circuit, source: Any) -> bool:
    n = len(c)
    if not c.closed or not 4 <= n <= 7:
        return False
    types = c.types
    if n in (5, 6) and 4 in types:
        return False
    if n == 6 and is_alternating(c, source) and types.count(3) % 2 == 0:
        return False
    if n == 7 and not is_standard_heptagon(c, source):
        return False
    return True


def edge_triangle_counts(graph: LabeledGraph, triangles: Iterable[Circuit]) -> Counter:
    counts: Counter = Counter()
    for t in triangles:
        for e in t.edges:
            counts[e.endpoints()] += 1
    return counts


def census(graph: LabeledGraph, max_len: int, source: Any | None = None) -> dict:
    """Counts of circuits by length and class, plus the list of violations."""
    src = source if source is not None else graph
    counts: Counter = Counter()
    violations = []
    for c in enumerate_circuits(graph, max_len):
        n = len(c)
        if n == 3:
            try:
                cls = classify_triangle(c)
            except Unclassifiable:
                cls = "unclassifiable"
                violations.append({"circuit": str(c), "reason": "unclassifiable triangle"})
        elif n == 4:
            cls = "2-tight" if is_two_tight(c) else "not-2-tight"
            if cls == "not-2-tight":
                violations.append({"circuit": str(c), "reason": "quadrangle not 2-tight"})
        elif n == 5 and is_standard_pentagon(c):
            cls = "standard-pentagon"
        else:
            cls = "alternating" if is_alternating(c, src) else "other"
        counts[f"{n}:{cls}"] += 1
    return {"counts": dict(sorted(counts.items())), "violations": violations}


def type3_membership(graph: LabeledGraph, oracle: Any, triangles: Iterable[Circuit] | None = None) -> dict:
    """Triangle counts of the type-3 edges with an interior endpoint.

    Such an edge has every triangle through it inside the ball, so the count
    is exact.  Expected: 0 or 2, and 2 exactly when both endpoints have degree 6.
    """
    if triangles is None:
        triangles = [c for c in enumerate_circuits(graph, 3) if len(c) == 3]
    counts = edge_triangle_counts(graph, triangles)

    def deg6(v):
        return oracle.has_finite_degree(v) and len(oracle.incident(v)) == 6

    checked = Counter()
    violations = []
    for e in graph.edges():
        if e.move_type != 3 or not (graph.is_interior(e.source) or graph.is_interior(e.target)):
            continue
        k = counts[e.endpoints()]
        both = deg6(e.source) and deg6(e.target)
        checked[k] += 1
        if k not in (0, 2) or (k == 2) != both:
            violations.append({"edge": str(e), "triangles": k, "both_degree_6": both})
    return {"checked": dict(sorted(checked.items())), "violations": violations}
