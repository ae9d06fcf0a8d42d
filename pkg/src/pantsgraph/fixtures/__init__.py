"""Hand-made labeled circuits on surfaces without a model oracle.

Each fixture is a JSON file in ``data/``: abstract curves with a sidedness
flag, vertices as lists of curve names, typed edges (type 4 with an optional
``direction`` ``[tail, head]``), the circuit of interest, and the outcomes the
circuit predicates are expected to give.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from pantsgraph.circuits import Circuit, is_alternating, is_standard_heptagon, is_tame, is_two_tight
from pantsgraph.graphs import LabeledEdge, LabeledGraph, make_edge
from pantsgraph.models import AbstractCurve

EXPECT_KEYS = {"two_tight", "alternating", "tame", "standard_heptagon", "type3_edges"}


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class FixtureVertex:
    name: str
    order: int

    kind = "fixture"
    slopes = ()

    @property
    def key(self) -> tuple:
        return (3, self.order, self.name)

    def __str__(self) -> str:
        return self.name


@dataclass
class LabeledFixture:
    name: str
    description: str
    provenance: str
    curves: dict
    graph: LabeledGraph
    circuit: Circuit
    expect: dict
    subpaths: list = field(default_factory=list)
    complete_adjacency: bool = False

    def vertex(self, name: str) -> FixtureVertex:
        for v in self.graph.vertices:
            if v.name == name:
                return v
        raise KeyError(name)


def names() -> list[str]:
    root = resources.files(__package__) / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _check_move(e: LabeledEdge) -> None:
    r, i, t = e.replaced, e.inserted, e.move_type
    sides = lambda cs: sorted(c.one_sided for c in cs)  # noqa: E731
    if t in (1, 2, 3):
        if len(r) != 1 or len(i) != 1:
            raise FixtureError(f"type-{t} edge {e} must swap exactly one curve")
        want = [t == 3]
        if sides(r) != want or sides(i) != want:
            raise FixtureError(f"type-{t} edge {e} swaps curves of the wrong sidedness")
    elif t == 4:
        small, big = (r, i) if len(r) < len(i) else (i, r)
        if len(small) != 1 or len(big) != 2 or sides(small) != [False] or sides(big) != [True, True]:
            raise FixtureError(f"type-4 edge {e} must trade one two-sided curve for two one-sided curves")
    else:
        raise FixtureError(f"unknown move type {t}")


def from_dict(data: dict) -> LabeledFixture:
    for key in ("name", "provenance", "curves", "vertices", "edges", "circuit"):
        if key not in data:
            raise FixtureError(f"fixture is missing {key!r}")
    if not data["provenance"].strip():
        raise FixtureError("fixture provenance is empty")
    curves = {
        n: AbstractCurve(n, bool(spec["one_sided"]), order=k) for k, (n, spec) in enumerate(data["curves"].items())
    }
    verts = {}
    labels = {}
    for k, (n, lab) in enumerate(data["vertices"].items()):
        v = FixtureVertex(n, k)
        verts[n] = v
        try:
            labels[v] = frozenset(curves[c] for c in lab)
        except KeyError as exc:
            raise FixtureError(f"vertex {n} uses undeclared curve {exc}") from None
        if len(labels[v]) != len(lab):
            raise FixtureError(f"vertex {n} repeats a curve")
    g = LabeledGraph(labels, name=data["name"])
    for item in data["edges"]:
        u, w = verts[item["u"]], verts[item["v"]]
        e = make_edge(g.label, u, w, int(item["type"]))
        _check_move(e)
        if "direction" in item:
            if item["type"] != 4:
                raise FixtureError("only type-4 edges carry a direction")
            if [str(e.tail), str(e.head)] != list(item["direction"]):
                raise FixtureError(f"direction of {e} must point to the larger pants decomposition")
        g.add_edge(e)
    try:
        circuit = Circuit.from_vertices(g, [verts[n] for n in data["circuit"]])
    except (KeyError, ValueError) as exc:
        raise FixtureError(f"bad circuit: {exc}") from None
    expect = dict(data.get("expect", {}))
    subpaths = []
    for sp in data.get("subpaths", []):
        path = Circuit.from_vertices(g, [verts[n] for n in sp["path"]], closed=False)
        subpaths.append((path, dict(sp["expect"])))
        expect_keys = set(sp["expect"])
        if expect_keys - EXPECT_KEYS:
            raise FixtureError(f"unknown expectations {expect_keys - EXPECT_KEYS}")
    if set(expect) - EXPECT_KEYS:
        raise FixtureError(f"unknown expectations {set(expect) - EXPECT_KEYS}")
    return LabeledFixture(
        name=data["name"],
        description=data.get("description", ""),
        provenance=data["provenance"],
        curves=curves,
        graph=g,
        circuit=circuit,
        expect=expect,
        subpaths=subpaths,
        complete_adjacency=bool(data.get("complete_adjacency", False)),
    )


def load_fixture(name: str) -> LabeledFixture:
    path = resources.files(__package__) / "data" / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(names())}")
    return from_dict(json.loads(path.read_text()))


def evaluate(fx: LabeledFixture) -> dict[str, Any]:
    """Run every circuit predicate on the fixture's circuit."""
    c = fx.circuit
    return {
        "two_tight": is_two_tight(c),
        "alternating": is_alternating(c, fx.graph),
        "tame": is_tame(c, fx.graph),
        "standard_heptagon": is_standard_heptagon(c, fx.graph),
        "type3_edges": c.types.count(3),
    }
