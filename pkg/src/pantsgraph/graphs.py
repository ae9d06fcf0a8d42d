"""Labeled moves, finite labeled graphs, BFS balls and JSON/DOT export.

A vertex is any hashable object with a ``key`` (a sortable tuple fixing the
canonical order) and a ``str`` form used as its id.  Curves likewise carry
``key``, ``str`` and ``one_sided``.

Serialization (stable, versioned by ``SCHEMA_VERSION``)::

    {"schema": 1,
     "vertices": [{"id", "kind", "slopes", "label", "frontier"}, ...],
     "edges":    [{"u", "v", "type", "direction"?}, ...]}

``direction`` appears on type-4 edges only, as ``[tail, head]`` with the tail
the endpoint of smaller cardinality.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator

SCHEMA_VERSION = 1


class InfiniteDegree(Exception):
    """Raised when a full neighbour list is requested for an infinite-degree vertex."""


def vkey(v: Any) -> tuple:
    return v.key


def curve_set_str(curves: Iterable[Any]) -> str:
    return "{" + ", ".join(str(c) for c in sorted(curves, key=vkey)) + "}"


@dataclass(frozen=True)
class LabeledEdge:
    """An elementary move from ``source`` to ``target``.

    ``replaced`` are the curves of ``source`` that are removed and ``inserted``
    the curves of ``target`` that replace them.  For type 4 the move goes from
    one two-sided curve to a pair of one-sided curves or back.
    """

    source: Hashable
    target: Hashable
    move_type: int
    replaced: frozenset
    inserted: frozenset

    @property
    def tail(self) -> Hashable | None:
        """For type 4: the endpoint of smaller cardinality; otherwise ``None``."""
        if self.move_type != 4:
            return None
        return self.source if len(self.replaced) < len(self.inserted) else self.target

    @property
    def head(self) -> Hashable | None:
        if self.move_type != 4:
            return None
        return self.target if self.tail == self.source else self.source

    def reversed(self) -> "LabeledEdge":
        return LabeledEdge(self.target, self.source, self.move_type, self.inserted, self.replaced)

    def endpoints(self) -> frozenset:
        return frozenset((self.source, self.target))

    def __str__(self) -> str:
        arrow = {4: "->" if self.tail == self.source else "<-"}.get(self.move_type, "--")
        return f"{self.source} {arrow}[{self.move_type}] {self.target}"


def make_edge(label: Callable[[Any], frozenset], u: Any, v: Any, move_type: int) -> LabeledEdge:
    lu, lv = label(u), label(v)
    return LabeledEdge(u, v, move_type, frozenset(lu - lv), frozenset(lv - lu))


class LabeledGraph:
    """A finite graph whose vertices carry multicurve labels and whose edges are moves.

    Used for BFS balls cut out of the model oracles and for hand-made fixtures.
    ``frontier`` holds the vertices some of whose true neighbours are missing.
    """

    def __init__(self, labels: dict | None = None, name: str = ""):
        self.name = name
        self._labels: dict[Any, frozenset] = {}
        self._adj: dict[Any, dict[Any, LabeledEdge]] = {}
        self.frontier: set = set()
        self.truncated: set = set()
        self.depth: dict[Any, int] = {}
        for v, lab in (labels or {}).items():
            self.add_vertex(v, lab)

    # -- construction --
    def add_vertex(self, v: Any, label: Iterable) -> None:
        if v not in self._labels:
            self._labels[v] = frozenset(label)
            self._adj[v] = {}

    def add_edge(self, edge: LabeledEdge) -> None:
        u, v = edge.source, edge.target
        if u not in self._labels or v not in self._labels:
            raise KeyError(f"edge {edge} has an endpoint outside the graph")
        if u == v:
            raise ValueError("loops are not allowed")
        self._adj[u][v] = edge
        self._adj[v][u] = edge.reversed()

    # -- queries shared with the model oracles --
    def label(self, v: Any) -> frozenset:
        return self._labels[v]

    def edge(self, u: Any, v: Any) -> LabeledEdge | None:
        return self._adj.get(u, {}).get(v)

    def incident(self, v: Any) -> list[LabeledEdge]:
        return [self._adj[v][u] for u in sorted(self._adj[v], key=vkey)]

    def neighbor_stream(self, v: Any) -> Iterator[LabeledEdge]:
        return iter(self.incident(v))

    def window(self, v: Any, width: int) -> list[LabeledEdge]:
        return self.incident(v)

    def type3_edges(self, v: Any) -> list[LabeledEdge]:
        return [e for e in self.incident(v) if e.move_type == 3]

    def neighbors(self, v: Any) -> list:
        return sorted(self._adj[v], key=vkey)

    def degree(self, v: Any) -> int:
        return len(self._adj[v])

    def is_interior(self, v: Any) -> bool:
        return v in self._labels and v not in self.frontier

    def has_finite_degree(self, v: Any) -> bool:
        return v not in self.truncated

    def __contains__(self, v: object) -> bool:
        return v in self._labels

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def vertices(self) -> list:
        return sorted(self._labels, key=vkey)

    def edges(self) -> list[LabeledEdge]:
        """Each edge once, oriented from the canonically smaller endpoint."""
        out = []
        for u in self.vertices:
            for v in self.neighbors(u):
                if vkey(u) < vkey(v):
                    out.append(self._adj[u][v])
        return out

    def common_neighbors(self, u: Any, v: Any) -> list:
        return sorted(set(self._adj[u]) & set(self._adj[v]), key=vkey)

    def span(self, core: Iterable) -> set:
        """Vertices whose label contains every curve of ``core``."""
        core = frozenset(core)
        return {v for v, lab in self._labels.items() if core <= lab}

    def induced(self, vertices: Iterable) -> "LabeledGraph":
        keep = set(vertices)
        g = LabeledGraph({v: self._labels[v] for v in keep}, name=self.name)
        for e in self.edges():
            if e.source in keep and e.target in keep:
                g.add_edge(e)
        g.frontier = self.frontier & keep
        g.truncated = self.truncated & keep
        g.depth = {v: d for v, d in self.depth.items() if v in keep}
        return g

    # -- export --
    def to_dict(self) -> dict:
        verts = []
        for v in self.vertices:
            verts.append(
                {
                    "id": str(v),
                    "kind": getattr(v, "kind", "vertex"),
                    "slopes": [str(s) for s in getattr(v, "slopes", ())],
                    "label": [str(c) for c in sorted(self._labels[v], key=vkey)],
                    "frontier": v in self.frontier,
                }
            )
        edges = []
        for e in self.edges():
            item: dict[str, Any] = {"u": str(e.source), "v": str(e.target), "type": e.move_type}
            if e.move_type == 4:
                item["direction"] = [str(e.tail), str(e.head)]
            edges.append(item)
        return {"schema": SCHEMA_VERSION, "name": self.name, "vertices": verts, "edges": edges}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, **kwargs)

    def to_dot(self) -> str:
        style = {
            1: 'color="black"',
            2: 'color="gray40"',
            3: 'color="blue", style="dashed"',
            4: 'color="red", dir="forward"',
        }
        lines = [f'graph "{self.name or "pants"}" {{']
        for v in self.vertices:
            shape = "box" if v in self.frontier else "ellipse"
            lines.append(f'  "{v}" [shape={shape}];')
        for e in self.edges():
            u, w = e.source, e.target
            if e.move_type == 4:
                u, w = e.tail, e.head
            lines.append(f'  "{u}" -- "{w}" [label="{e.move_type}", {style[e.move_type]}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def ball(oracle: Any, base: Any, radius: int, width: int = 8) -> LabeledGraph:
    """Induced labeled subgraph on the vertices within ``radius`` steps of ``base``.

    Infinite-degree vertices expand only the first ``width`` neighbours of their
    canonical stream.  A vertex is marked frontier unless every one of its true
    neighbours is in the ball, so a truncated vertex never passes as finite.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if width < 1:
        raise ValueError("width must be >= 1")
    g = LabeledGraph(name=f"{oracle.name}:{base}:r{radius}:w{width}")
    g.add_vertex(base, oracle.label(base))
    g.depth[base] = 0
    queue = deque([base])
    while queue:
        v = queue.popleft()
        d = g.depth[v]
        if d >= radius:
            continue
        for e in oracle.window(v, width):
            u = e.target
            if u not in g:
                g.add_vertex(u, oracle.label(u))
                g.depth[u] = d + 1
                queue.append(u)

    verts = g.vertices
    infinite = [v for v in verts if not oracle.has_finite_degree(v)]
    g.truncated = set(infinite)
    for v in verts:
        if oracle.has_finite_degree(v):
            complete = True
            for e in oracle.incident(v):
                if e.target in g:
                    g.add_edge(e)
                else:
                    complete = False
            if not complete:
                g.frontier.add(v)
        else:
            g.frontier.add(v)
    # edges between two infinite-degree vertices are found by direct queries
    for i, v in enumerate(infinite):
        for u in infinite[i + 1:]:
            e = oracle.edge(v, u)
            if e is not None:
                g.add_edge(e)
    return g


def bfs_layers(graph: LabeledGraph, base: Any) -> Iterator[list]:
    seen = {base}
    layer = [base]
    while layer:
        yield layer
        nxt = []
        for v in layer:
            for u in graph.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        layer = sorted(nxt, key=vkey)
