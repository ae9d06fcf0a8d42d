"""Marked F-graphs and label-free recognition of move types.

``f_subgraph`` and friends work from multicurve labels on a finite ball.
``classify_edge`` uses adjacency queries only: it never looks at labels or at
the recorded move type, so comparing its output with the ground truth is a
real test of the characterisation of moves on the shipped models.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from pantsgraph.graphs import LabeledGraph, vkey

FAREY = "Farey"
FAN = "Fan"
THIN = "ThinEdge"

# largest finite degree occurring in the shipped models
MAX_FINITE_DEGREE = 6


class Indeterminate(Exception):
    """The ball is too small to decide the requested structure."""


class BudgetExhausted(Exception):
    """Degree probing could not certify finite or infinite degree."""


@dataclass(frozen=True)
class MarkedFGraph:
    graph_kind: str
    marked_vertex: Any
    defining_curve: Any
    span: frozenset = field(compare=False)
    graph: LabeledGraph | None = field(default=None, compare=False, repr=False)

    @property
    def core(self) -> frozenset:
        """The curves shared by every vertex of the span."""
        assert self.graph is not None
        return self.graph.label(self.marked_vertex) - {self.defining_curve}


def _check_fan(g: LabeledGraph, centre: Any, span: set) -> bool:
    rim = span - {centre}
    if centre not in span or len(rim) < 2:
        return False
    for v in rim:
        e = g.edge(centre, v)
        if e is None or e.move_type != 4 or e.tail != centre:
            return False
    # the rim induces a disjoint union of paths
    for v in rim:
        if sum(1 for u in g.neighbors(v) if u in rim) > 2:
            return False
    return True


def _check_farey(g: LabeledGraph, span: set) -> bool:
    sizes = {len(g.label(v)) for v in span}
    if len(sizes) != 1:
        return False
    types = {e.move_type for e in g.induced(span).edges()}
    return len(types) == 1 and types <= {1, 2}


def f_subgraph(graph: LabeledGraph, edge: tuple[Any, Any], check: bool = True) -> MarkedFGraph:
    """F(XY): the span of the vertices containing X n Y, with its marking.

    The marked vertex is the endpoint of smaller cardinality (the first one on
    a tie) and the defining curve is the curve it gives up along the edge.
    """
    X, Y = edge
    if X not in graph or Y not in graph:
        raise Indeterminate(f"edge {X}--{Y} is not inside the ball")
    e = graph.edge(X, Y)
    if e is None:
        raise ValueError(f"{X} and {Y} are not adjacent")
    lx, ly = graph.label(X), graph.label(Y)
    if len(ly) < len(lx):
        X, Y, lx, ly = Y, X, ly, lx
    (alpha,) = lx - ly
    span = frozenset(graph.span(lx & ly))
    if alpha.one_sided:
        kind = THIN
    elif len(lx) < len(ly):
        kind = FAN
    else:
        kind = FAREY
    if check:
        ok = {
            THIN: lambda: span == {X, Y} or not (graph.is_interior(X) and graph.is_interior(Y)),
            FAN: lambda: _check_fan(graph, X, set(span)),
            FAREY: lambda: _check_farey(graph, set(span)),
        }[kind]()
        if not ok:
            raise Indeterminate(f"span of {X}--{Y} does not look like a {kind} subgraph in this ball")
    return MarkedFGraph(kind, X, alpha, span, graph)


def v_marked(F: MarkedFGraph) -> Any:
    """The unique curve alpha of the marked vertex X with span(X - alpha) equal to F."""
    g = F.graph
    if g is None:
        raise ValueError("the marked F-graph carries no ball")
    X = F.marked_vertex
    hits = [a for a in sorted(g.label(X), key=vkey) if frozenset(g.span(g.label(X) - {a})) == F.span]
    if len(hits) != 1:
        raise Indeterminate(f"{len(hits)} curves of {X} span this F-graph")
    return hits[0]


def is_special(X: Any, alpha: Any, graph: LabeledGraph) -> bool:
    """Whether the span of X - alpha is a fan centred at X."""
    lx = graph.label(X)
    if alpha not in lx:
        raise ValueError(f"{alpha} is not a curve of {X}")
    return _check_fan(graph, X, graph.span(lx - {alpha}))


def f_graph_kind(graph: LabeledGraph, X: Any, alpha: Any) -> str:
    """Kind of F(X, alpha), read off any move at X replacing alpha."""
    for e in graph.incident(X):
        if e.replaced == {alpha}:
            return f_subgraph(graph, (X, e.target), check=False).graph_kind
    raise Indeterminate(f"no move at {X} replacing {alpha} in this ball")


# -- label-free classification ------------------------------------------------

@dataclass(frozen=True)
class EdgeClass:
    """Predicted move type.  ``types`` is {1, 2} when only "Farey" is known."""

    types: frozenset
    tail: Any = None
    head: Any = None
    common: int = 0

    @property
    def predicted(self) -> str:
        return "1|2" if self.types == {1, 2} else str(min(self.types))

    def agrees(self, edge: Any) -> bool:
        if edge.move_type not in self.types:
            return False
        if edge.move_type == 4:
            return (self.tail, self.head) == (edge.tail, edge.head)
        return True


def probe_degree(oracle: Any, v: Any, budget: int) -> tuple[bool, list]:
    """(finite, neighbours seen) from at most ``budget`` stream items."""
    seen = []
    stream = oracle.neighbor_stream(v)
    for e in stream:
        seen.append(e.target)
        if len(seen) >= budget:
            break
    else:
        return True, seen
    if next(stream, None) is None:
        return True, seen
    if len(seen) > MAX_FINITE_DEGREE:
        return False, seen
    raise BudgetExhausted(f"{budget} probes do not settle the degree of {v}")


def _adjacent(oracle: Any, a: Any, b: Any) -> bool:
    return a != b and oracle.edge(a, b) is not None


def common_neighbor_count(oracle: Any, X: Any, Y: Any, seen_x: Iterable, seen_y: Iterable) -> int:
    found = {w for w in seen_x if w != Y and _adjacent(oracle, w, Y)}
    found |= {w for w in seen_y if w != X and _adjacent(oracle, w, X)}
    return len(found)


def classify_edge(oracle: Any, edge: tuple[Any, Any], probe_budget: int = 24) -> EdgeClass:
    """Move type of the edge XY from adjacency queries alone.

    Degrees are probed along the canonical neighbour stream.  Common
    neighbours are searched among the probed neighbours of both endpoints; for
    the shipped models they appear within the first few stream items.
    """
    X, Y = edge
    if not _adjacent(oracle, X, Y):
        raise ValueError(f"{X} and {Y} are not adjacent")
    fin_x, seen_x = probe_degree(oracle, X, probe_budget)
    fin_y, seen_y = probe_degree(oracle, Y, probe_budget)
    t = common_neighbor_count(oracle, X, Y, seen_x, seen_y)
    if t == 0 or (fin_x and fin_y):
        return EdgeClass(frozenset({3}), common=t)
    if fin_x != fin_y:
        tail, head = (Y, X) if fin_x else (X, Y)
        return EdgeClass(frozenset({4}), tail, head, common=t)
    return EdgeClass(frozenset({1, 2}), common=t)
