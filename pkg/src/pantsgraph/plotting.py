"""Figures for CLI reports.  Uses the non-interactive Agg backend."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from pantsgraph.graphs import LabeledGraph, bfs_layers  # noqa: E402

EDGE_STYLE = {
    1: {"color": "black", "linestyle": "-"},
    2: {"color": "0.45", "linestyle": "-"},
    3: {"color": "tab:blue", "linestyle": "--"},
    4: {"color": "tab:red", "linestyle": "-"},
}

RC = {
    "font.size": 8,
    "axes.titlesize": 9,
    "axes.labelsize": 8,
    "legend.fontsize": 7,
    "savefig.dpi": 150,
}


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def layout(graph: LabeledGraph, base=None) -> dict:
    """Concentric layout: BFS layer k on a circle of radius k."""
    verts = graph.vertices
    if not verts:
        return {}
    if base is None:
        base = min(graph.depth, key=graph.depth.get) if graph.depth else verts[0]
    pos = {}
    placed = set()
    for k, layer in enumerate(bfs_layers(graph, base)):
        for j, v in enumerate(layer):
            t = 2 * math.pi * j / max(len(layer), 1) + 0.3 * k
            pos[v] = (k * math.cos(t), k * math.sin(t))
            placed.add(v)
    # vertices in other components go on an outer ring
    rest = [v for v in verts if v not in placed]
    r = 1 + max((math.hypot(*p) for p in pos.values()), default=0)
    for j, v in enumerate(rest):
        t = 2 * math.pi * j / len(rest)
        pos[v] = (r * math.cos(t), r * math.sin(t))
    return pos


def plot_ball(graph: LabeledGraph, path: str | Path, title: str = "", labels: bool | None = None) -> Path:
    pos = layout(graph)
    if labels is None:
        labels = len(graph) <= 40
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6, 6))
        for e in graph.edges():
            u, w = (e.tail, e.head) if e.move_type == 4 else (e.source, e.target)
            (x0, y0), (x1, y1) = pos[u], pos[w]
            style = EDGE_STYLE[e.move_type]
            if e.move_type == 4:
                ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                            arrowprops={"arrowstyle": "->", "color": style["color"], "lw": 0.8})
            else:
                ax.plot([x0, x1], [y0, y1], lw=0.8, **style)
        for v, (x, y) in pos.items():
            frontier = v in graph.frontier
            ax.plot(x, y, "o", ms=4, mfc="white" if frontier else "k", mec="k", mew=0.7)
            if labels:
                ax.annotate(str(v), (x, y), xytext=(3, 3), textcoords="offset points", fontsize=5)
        for t, style in EDGE_STYLE.items():
            ax.plot([], [], lw=1, label=f"type {t}", **style)
        ax.legend(loc="upper right", frameon=False)
        ax.set_title(title or graph.name)
        ax.set_aspect("equal")
        ax.axis("off")
        return _save(fig, path)


def plot_census(counts: dict, path: str | Path, title: str = "circuit census") -> Path:
    keys = sorted(counts, key=lambda k: (int(k.split(":")[0]), k))
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6, 3))
        ax.bar(range(len(keys)), [counts[k] for k in keys], color="0.35")
        ax.set_xticks(range(len(keys)))
        ax.set_xticklabels(keys, rotation=40, ha="right")
        ax.set_ylabel("circuits")
        ax.set_title(title)
        for side in ("top", "right"):
            ax.spines[side].set_visible(False)
        return _save(fig, path)


def plot_contraction(lengths: list[int], kinds: list[str], path: str | Path, title: str = "loop contraction") -> Path:
    colors = {"backtrack": "0.5", "triangle": "tab:blue", "pentagon": "tab:red"}
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6, 3))
        ax.plot(range(len(lengths)), lengths, color="k", lw=0.8)
        for i, k in enumerate(kinds, start=1):
            ax.plot(i, lengths[i], "o", ms=3, color=colors[k])
        for k, c in colors.items():
            ax.plot([], [], "o", ms=3, color=c, label=k)
        ax.legend(frameon=False)
        ax.set_xlabel("move")
        ax.set_ylabel("loop length")
        ax.set_title(title)
        for side in ("top", "right"):
            ax.spines[side].set_visible(False)
        return _save(fig, path)
