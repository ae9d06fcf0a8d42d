"""Cyclic edge-loops and the elementary rewriting moves used by certificates.

A loop is stored as the list of its vertices in order, without repeating the
base point; the edge from the last entry back to the first is implicit.  A
single-entry list is the constant loop.

Every move replaces the cyclic segment ``cycle[i], ..., cycle[i + k]`` by a
new path with the same end points.  The result is written starting from the
segment start, i.e. the loop is first rotated so that position ``i`` is at
index 0.  Engines and checkers must both use :func:`splice` so that positions
recorded in a certificate mean the same thing on replay.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

MOVE_KINDS = ("backtrack", "triangle", "pentagon")

# number of loop edges a forward move consumes, and the replacement length
_FORWARD_SPAN = {"backtrack": 2, "triangle": 2, "pentagon": 3}
_INVERSE_SPAN = {"backtrack": 0, "triangle": 1, "pentagon": 2}


@dataclass(frozen=True)
class Move:
    """One elementary homotopy move.

    ``kind`` is ``backtrack``, ``triangle`` or ``pentagon``; ``position`` indexes
    the segment start in the current loop; ``cell`` is the 2-cell used (for an
    inverse backtrack, the vertex visited by the inserted spike).
    """

    kind: str
    position: int
    cell: Any = None
    inverse: bool = False
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")

    @property
    def span(self) -> int:
        """Number of loop edges in the segment this move rewrites."""
        return (_INVERSE_SPAN if self.inverse else _FORWARD_SPAN)[self.kind]


def segment(cycle: Sequence[Hashable], position: int, length: int) -> list:
    """The ``length + 1`` vertices of the cyclic segment starting at ``position``."""
    n = len(cycle)
    return [cycle[(position + j) % n] for j in range(length + 1)]


def splice(cycle: Sequence[Hashable], position: int, length: int, replacement: Sequence[Hashable]) -> list:
    """Replace the cyclic segment of ``length`` edges at ``position``.

    ``replacement`` is a path from the segment's first vertex to its last one.
    """
    n = len(cycle)
    if not 0 <= position < n:
        raise IndexError(f"position {position} outside loop of length {n}")
    if length > n:
        raise ValueError(f"segment of {length} edges does not fit in a loop of length {n}")
    seg = segment(cycle, position, length)
    if not replacement or replacement[0] != seg[0] or replacement[-1] != seg[-1]:
        raise ValueError("replacement must share the end points of the segment")
    rotated = list(cycle[position:]) + list(cycle[:position])
    if length == n or n == 1:
        # the segment is the whole loop; the replacement is itself closed
        return list(replacement[:-1]) if len(replacement) > 1 else [replacement[0]]
    return list(replacement) + rotated[length + 1:]


def to_cycle(loop: Sequence[Hashable]) -> list:
    """Closed walk ``[x0, ..., x0]`` to cyclic form; ``[x0]`` is the constant loop."""
    if not loop:
        raise ValueError("empty loop")
    if len(loop) == 1:
        return [loop[0]]
    if loop[0] != loop[-1]:
        raise ValueError("loop is not closed: first and last entries differ")
    return list(loop[:-1])


def to_closed(cycle: Sequence[Hashable]) -> list:
    return list(cycle) + [cycle[0]] if len(cycle) > 1 else [cycle[0]]


def random_closed_walk(
    neighbors: Callable[[Any], Iterable], base: Any, rng: random.Random, length: int, radius: int | None = None
) -> list:
    """A seeded closed walk of at most ``length`` edges.

    Only the ball of radius ``radius`` (default ``length // 2``) around
    ``base`` is explored, so ``neighbors`` may describe an infinite graph as
    long as each list is finite.

    The walk wanders for a while, avoiding immediate reversals where it can,
    and then returns to ``base`` along a shortest path.  Returned closed.
    """
    dist = {base: 0}
    parent: dict = {}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        if dist[v] >= (length // 2 if radius is None else radius):
            continue
        for u in neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                parent[u] = v
                queue.append(u)
    walk = [base]
    while True:
        v = walk[-1]
        if len(walk) - 1 + dist[v] >= length:
            break
        # stay within reach of home
        options = [u for u in neighbors(v) if u in dist and len(walk) + dist[u] <= length]
        if len(walk) > 1:
            options = [u for u in options if u != walk[-2]] or options
        if not options:
            break
        walk.append(rng.choice(options))
    v = walk[-1]
    while v != base:
        v = parent[v]
        walk.append(v)
    return walk
