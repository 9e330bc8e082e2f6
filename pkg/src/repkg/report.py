"""Figure rendering for analysis and refactoring reports.

Figures are written straight to files (Agg backend), deterministic across
runs: node positions come from a fixed community ring layout, not from a
randomized force simulation.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib import colormaps

from .graph import DependencyGraph, Membership
from .metrics import InstabilityReport
from .refactor import ComparisonRow

_PALETTE = colormaps["tab20"]


def _color(community: int) -> tuple:
    return _PALETTE(community % 20)


def _ring_layout(membership: Membership) -> list[tuple[float, float]]:
    """Communities on an outer ring, members on small inner rings."""
    groups = membership.communities()
    occupied = [g for g in groups if g]
    positions = [(0.0, 0.0)] * len(membership)
    for slot, members in enumerate(occupied):
        angle = 2 * math.pi * slot / max(len(occupied), 1)
        cx, cy = 3.0 * math.cos(angle), 3.0 * math.sin(angle)
        radius = 0.4 + 0.12 * len(members)
        for k, node in enumerate(members):
            theta = 2 * math.pi * k / len(members)
            positions[node] = (cx + radius * math.cos(theta),
                               cy + radius * math.sin(theta))
    return positions


def save_membership_figure(graph: DependencyGraph, membership: Membership,
                           path: str | Path, title: str = "") -> Path:
    """Draw the dependency graph colored by community."""
    pos = _ring_layout(membership)
    fig, ax = plt.subplots(figsize=(8, 8))
    for (u, v), _w in sorted(graph.adjacency().items()):
        if u == v:
            continue
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.annotate("", xy=(x2, y2), xytext=(x1, y1),
                    arrowprops=dict(arrowstyle="-|>" if graph.directed else "-",
                                    color="0.6", lw=0.8, shrinkA=8, shrinkB=8))
    xs = [p[0] for p in pos]
    ys = [p[1] for p in pos]
    colors = [_color(c) for c in membership.assignment]
    ax.scatter(xs, ys, s=260, c=colors, zorder=3, edgecolors="white")
    for v in graph.nodes:
        ax.annotate(v.label.rsplit(".", 1)[-1], pos[v.index],
                    ha="center", va="center", fontsize=6, zorder=4)
    ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_instability_figure(report: InstabilityReport, path: str | Path,
                            title: str = "package instability") -> Path:
    """Horizontal bars of instability per package."""
    names = [row.package for row in report.rows]
    values = [row.instability for row in report.rows]
    fig, ax = plt.subplots(figsize=(8, max(2.0, 0.5 * len(names) + 1)))
    ax.barh(range(len(names)), values, color=[_color(i) for i in range(len(names))])
    ax.set_yticks(range(len(names)), names)
    ax.invert_yaxis()
    ax.set_xlim(0, 1)
    ax.set_xlabel("instability")
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_comparison_figure(rows: list[ComparisonRow], path: str | Path,
                           title: str = "instability comparison") -> Path:
    """Grouped bars: original vs directed vs undirected instability."""
    names = [r.package for r in rows]
    series = [
        ("original", [r.original for r in rows]),
        ("directed", [r.directed for r in rows]),
        ("undirected", [r.undirected for r in rows]),
    ]
    width = 0.25
    fig, ax = plt.subplots(figsize=(max(6.0, 1.2 * len(names)), 4.5))
    for offset, (label, values) in enumerate(series):
        xs = [i + (offset - 1) * width for i in range(len(names))]
        ax.bar(xs, [0.0 if v is None else v for v in values], width,
               label=label, color=_color(offset))
        for x, v in zip(xs, values):
            if v is None:  # package merged away under this packaging
                ax.annotate("merged", (x, 0.01), rotation=90,
                            ha="center", va="bottom", fontsize=6)
    ax.set_xticks(range(len(names)), names, rotation=30, ha="right")
    ax.set_ylim(0, 1)
    ax.set_ylabel("instability")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
