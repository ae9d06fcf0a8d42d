"""Null-homotopy certificates for edge-loops in the pants graph of N_3.

The 2-cells are the triangles of the graph and the standard pentagons.  A
certificate lists elementary moves (see :mod:`pantsgraph.loops`) that turn the
loop into a constant one; :func:`verify_certificate` replays it and re-checks
every cell against the model without trusting the engine.

Cell conventions (vertex tuples, in cyclic order):

* triangle ``(a, v, b)``: forward turns ``a-v-b`` into ``a-b``; inverse the other way.
* pentagon ``(x0, x1, x2, x3, y)``: forward turns ``x0-x1-x2-x3`` into
  ``x0-y-x3``; inverse the other way.
* inverse backtrack: the cell is the vertex visited by the inserted spike.

Certificate JSON::

    {"loop": [id, ..., id], "moves": [{"kind", "position", "cell", "inverse"}], "final": id}

``loop`` is the closed walk (first vertex repeated at the end).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from pantsgraph.circuits import Circuit, Unclassifiable, classify_triangle, is_standard_pentagon
from pantsgraph.farey import contract_farey_cycle
from pantsgraph.graphs import ball
from pantsgraph.loops import Move, random_closed_walk, segment, splice, to_closed, to_cycle
from pantsgraph.models import N3Oracle, PantsVertexN3, V2, parse_vertex, psi_inv


@dataclass
class ContractionCertificate:
    loop: list
    moves: list[Move] = field(default_factory=list)
    final: Any = None

    def to_dict(self) -> dict:
        moves = []
        for m in self.moves:
            if m.cell is None:
                cell = None
            elif isinstance(m.cell, tuple):
                cell = [str(v) for v in m.cell]
            else:
                cell = str(m.cell)
            moves.append({"kind": m.kind, "position": m.position, "cell": cell, "inverse": m.inverse})
        return {"loop": [str(v) for v in self.loop], "moves": moves, "final": str(self.final)}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "ContractionCertificate":
        moves = []
        for m in data["moves"]:
            cell = m.get("cell")
            if isinstance(cell, list):
                cell = tuple(parse_vertex(x) for x in cell)
            elif isinstance(cell, str):
                cell = parse_vertex(cell)
            moves.append(Move(m["kind"], int(m["position"]), cell, bool(m.get("inverse", False))))
        return cls([parse_vertex(x) for x in data["loop"]], moves, parse_vertex(data["final"]))


def _rewrite(cycle: list, m: Move) -> tuple[int, list]:
    """(segment length, replacement path) of a move on the current cycle."""
    a = cycle[m.position]
    if m.kind == "backtrack":
        return (0, [a, m.cell, a]) if m.inverse else (2, [a])
    cell = tuple(m.cell)
    if m.kind == "triangle":
        return (1, list(cell)) if m.inverse else (2, [cell[0], cell[2]])
    return (2, list(cell[:4])) if m.inverse else (3, [cell[0], cell[4], cell[3]])


def _expected_segment(m: Move) -> list | None:
    if m.kind == "backtrack":
        return None
    cell = tuple(m.cell)
    if m.kind == "triangle":
        return [cell[0], cell[2]] if m.inverse else list(cell)
    return [cell[0], cell[4], cell[3]] if m.inverse else list(cell[:4])


def apply_move(cycle: list, m: Move) -> list:
    length, repl = _rewrite(cycle, m)
    return splice(cycle, m.position, length, repl)


def _check_closed(oracle: Any, loop: Sequence) -> list:
    cycle = to_cycle(list(loop))
    n = len(cycle)
    for i in range(n if n > 1 else 0):
        if oracle.edge(cycle[i], cycle[(i + 1) % n]) is None:
            raise ValueError(f"consecutive loop entries {cycle[i]}, {cycle[(i + 1) % n]} are not adjacent")
    return cycle


def _find_backtrack(cycle: list) -> int | None:
    n = len(cycle)
    if n == 2:
        return 0
    for i in range(n):
        if n > 2 and cycle[i] == cycle[(i + 2) % n]:
            return i
    return None


def _is_e33(u: PantsVertexN3, v: PantsVertexN3) -> bool:
    return u.kind == "V3" and v.kind == "V3"


class _Engine:
    def __init__(self, cycle: list, oracle: Any):
        self.cycle = list(cycle)
        self.oracle = oracle
        self.moves: list[Move] = []

    def do(self, m: Move) -> None:
        self.cycle = apply_move(self.cycle, m)
        self.moves.append(m)

    def remove_backtrack(self) -> bool:
        i = _find_backtrack(self.cycle)
        if i is None:
            return False
        self.do(Move("backtrack", i))
        return True

    def shortcut(self) -> bool:
        """Replace some 2-path a-v-b with a-b when a, v, b span a triangle."""
        n = len(self.cycle)
        if n < 3:
            return False
        for j in range(n):
            a, v, b = self.cycle[j], self.cycle[(j + 1) % n], self.cycle[(j + 2) % n]
            if a != b and self.oracle.edge(a, b) is not None:
                self.do(Move("triangle", j, cell=(a, v, b)))
                return True
        return False

    def eliminate_e33(self) -> bool:
        n = len(self.cycle)
        if n < 2:
            return False
        for i in range(n):
            T, T2 = self.cycle[i], self.cycle[(i + 1) % n]
            if _is_e33(T, T2):
                s = min(set(T.data) & set(T2.data))
                self.do(Move("triangle", i, cell=(T, V2(s), T2), inverse=True))
                return True
        return False


def eliminate_type3_interior(loop: Sequence, oracle: Any | None = None) -> tuple[list, list[Move]]:
    """Reroute every V3-V3 edge T-T' through V2(s) for the least common slope s.

    Backtracks are removed as they appear.  ``loop`` and the result are closed walks.
    """
    oracle = oracle or N3Oracle()
    eng = _Engine(_check_closed(oracle, loop), oracle)
    while eng.remove_backtrack() or eng.eliminate_e33():
        pass
    return to_closed(eng.cycle), eng.moves


def _measure(cycle: list) -> tuple[int, int]:
    return (sum(1 for v in cycle if v.kind == "V3"), len(cycle))


def _pentagon_at(cycle: list) -> Move | None:
    """A pentagon move at the first V1 vertex with a V2 neighbour on the loop."""
    n = len(cycle)
    for i in range(n):
        if cycle[i].kind != "V1":
            continue
        if cycle[(i + 1) % n].kind == "V2":
            x0, x1, x2, x3 = segment(cycle, i, 3)
            return Move("pentagon", i, cell=(x0, x1, x2, x3, psi_inv(x3)))
        if cycle[i - 1].kind == "V2":
            x3, x2, x1, x0 = segment(cycle, (i - 3) % n, 3)
            return Move("pentagon", (i - 3) % n, cell=(x3, x2, x1, x0, psi_inv(x3)))
    return None


def contract_loop(loop: Sequence, oracle: Any | None = None, max_steps: int = 100_000) -> ContractionCertificate:
    """Contract a closed edge-loop of the N_3 model, returning a certificate.

    Steps: greedy triangle shortcuts, rerouting of V3-V3 edges, then pentagon
    moves at V1-V2-V3-V2 segments until the loop lies in the V1 layer, which
    is a Farey graph and is contracted by peak reduction.
    """
    oracle = oracle or N3Oracle()
    loop = list(loop)
    eng = _Engine(_check_closed(oracle, loop), oracle)

    while eng.remove_backtrack() or eng.shortcut():
        pass
    while eng.remove_backtrack() or eng.eliminate_e33():
        pass

    steps = 0
    while len(eng.cycle) > 1:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("contraction did not terminate within max_steps")
        before = _measure(eng.cycle)
        if eng.remove_backtrack():
            assert _measure(eng.cycle) < before
            continue
        cycle = eng.cycle
        if all(v.kind == "V1" for v in cycle):
            moves, _ = contract_farey_cycle([v.data for v in cycle])
            for m in moves:
                if m.kind == "triangle":
                    m = Move("triangle", m.position, cell=tuple(segment(eng.cycle, m.position, 2)))
                eng.do(m)
            break
        m = _pentagon_at(cycle)
        if m is None:
            # only V2/V3 vertices: visit the V1 partner of a V2 vertex and back
            k = next(i for i, v in enumerate(cycle) if v.kind == "V2")
            eng.do(Move("backtrack", k, cell=psi_inv(cycle[k]), inverse=True))
            m = _pentagon_at(eng.cycle)
            assert m is not None
        x1 = m.cell[1] if m.cell[0].kind == "V1" else m.cell[2]
        assert m.cell[2 if m.cell[0].kind == "V1" else 1].kind == "V3", m
        assert x1.kind == "V2"
        eng.do(m)
        assert _measure(eng.cycle) < before, (before, _measure(eng.cycle))
    return ContractionCertificate(loop, eng.moves, eng.cycle[0])


@dataclass(frozen=True)
class Verdict:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _cell_ok(oracle: Any, m: Move) -> str:
    if m.kind == "backtrack":
        return ""
    cell = m.cell
    size = 3 if m.kind == "triangle" else 5
    if not isinstance(cell, tuple) or len(cell) != size or len(set(cell)) != size:
        return f"{m.kind} cell must list {size} distinct vertices"
    try:
        c = Circuit.from_vertices(oracle, cell)
    except ValueError as exc:
        return f"cell is not a circuit: {exc}"
    if m.kind == "triangle":
        try:
            classify_triangle(c)
        except Unclassifiable as exc:
            return str(exc)
        return ""
    return "" if is_standard_pentagon(c) else "cell is not a standard pentagon"


def verify_certificate(cert: ContractionCertificate, oracle: Any | None = None) -> Verdict:
    """Replay a certificate, re-validating every cell; index -1 flags the loop or end state."""
    oracle = oracle or N3Oracle()
    try:
        cycle = _check_closed(oracle, cert.loop)
    except ValueError as exc:
        return Verdict(False, -1, f"bad initial loop: {exc}")
    for idx, m in enumerate(cert.moves):
        n = len(cycle)
        if not 0 <= m.position < n:
            return Verdict(False, idx, f"position {m.position} outside loop of length {n}")
        if m.kind == "backtrack":
            if m.inverse:
                a = cycle[m.position]
                if m.cell is None or oracle.edge(a, m.cell) is None:
                    return Verdict(False, idx, "spike vertex is not adjacent")
            else:
                if n < 2 or cycle[m.position] != cycle[(m.position + 2) % n]:
                    return Verdict(False, idx, "no backtrack at this position")
        else:
            reason = _cell_ok(oracle, m)
            if reason:
                return Verdict(False, idx, reason)
            want = _expected_segment(m)
            length = len(want) - 1  # type: ignore[arg-type]
            if length > n or segment(cycle, m.position, length) != want:
                return Verdict(False, idx, "cell does not match the loop segment")
        try:
            cycle = apply_move(cycle, m)
        except (ValueError, IndexError) as exc:
            return Verdict(False, idx, str(exc))
    if len(cycle) != 1:
        return Verdict(False, -1, f"final loop has length {len(cycle)}")
    if cycle[0] != cert.final:
        return Verdict(False, -1, f"final vertex {cycle[0]} differs from the recorded {cert.final}")
    return Verdict(True)


def random_loop(
    rng: random.Random, length: int, radius: int = 3, width: int = 6, base: Any | None = None
) -> list:
    """Seeded closed walk of at most ``length`` edges inside a ball of the N_3 model."""
    oracle = N3Oracle()
    if base is None:
        base = oracle.sample_vertex(rng, max_den=5)
    g = ball(oracle, base, radius, width)
    return random_closed_walk(g.neighbors, base, rng, length)
