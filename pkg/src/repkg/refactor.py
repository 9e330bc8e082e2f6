"""Greedy quality-maximizing package refactoring.

The engine starts from the label-derived packaging and repeatedly moves a
single class into the package where the overall partition quality improves
most, restarting the scan from the first node after every accepted move,
until a full scan finds no strict improvement. Each accepted move is
recorded as a suggestion.

The directed mode scores moves with the directed quality on the dependency
graph as given. The undirected (naive) mode first discards edge directions
by symmetrizing, then runs the identical loop with the undirected score;
the contrast between the two movement lists is the point of the exercise.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .errors import EmptyGraphError
from .graph import DependencyGraph, Edge, Membership
from .ingest import PackageTable, class_name_of, ensure_labels, membership_from_labels
from .metrics import InstabilityReport
from .modularity import quality

logger = logging.getLogger(__name__)

MODES = ("directed", "undirected")


def to_undirected(graph: DependencyGraph) -> DependencyGraph:
    """Symmetrize: every arc gains an equal-weight reverse arc.

    Antiparallel arcs merge, so a mutual dependency of weight w becomes a
    single undirected link of weight 2w. Self-loops are dropped with the
    rest of simplification.
    """
    edges = []
    for e in graph.edges:
        edges.append(e)
        if e.source != e.target:
            edges.append(Edge(e.target, e.source, e.weight))
    return DependencyGraph(graph.nodes, edges, False).simplify()


@dataclass(frozen=True)
class Movement:
    """One suggested relocation of a class between packages."""

    class_label: str
    from_package: str
    to_package: str
    step: int
    node_index: int

    def to_json_dict(self) -> dict:
        return {"class": self.class_label, "from": self.from_package,
                "to": self.to_package}

    def sentence(self) -> str:
        return (f"Move class {self.class_label} from package {self.from_package} "
                f"to package {self.to_package}")


@dataclass(frozen=True)
class RefactorResult:
    mode: str
    initial_q: float
    final_q: float
    membership: Membership
    movements: tuple[Movement, ...]
    packages: PackageTable

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "initialQ": round(self.initial_q, 2),
            "finalQ": round(self.final_q, 2),
            "initialQExact": self.initial_q,
            "finalQExact": self.final_q,
            "membership": list(self.membership.assignment),
            "movements": [m.to_json_dict() for m in self.movements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def refactor(graph: DependencyGraph, mode: str = "directed") -> RefactorResult:
    """Suggest class moves that increase partition quality.

    The scan order and tie handling are pinned down for reproducibility:
    nodes are scanned in index order, candidate target communities come
    from the nodes in index order, and the first community reaching the
    maximal tentative quality wins (strict > comparison). The running best
    tentative quality persists across restarts, which is equivalent to
    demanding strict improvement over the current quality. Locked nodes
    are never moved.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if graph.node_count == 0:
        raise EmptyGraphError("cannot refactor an empty graph")
    graph = ensure_labels(graph.simplify())
    membership, table = membership_from_labels(graph)
    work = to_undirected(graph) if mode == "undirected" else graph

    q_prime = -1.0
    q = quality(work, membership)
    initial_q = q
    movements: list[Movement] = []
    n = work.node_count

    restart = True
    while restart:
        restart = False
        for i in range(n):
            if work.nodes[i].locked:
                continue
            selected = None
            tried: set[int] = set()
            for j in range(n):
                candidate = membership.assignment[j]
                if candidate in tried:
                    continue
                tried.add(candidate)
                tentative = quality(work, membership.with_move(i, candidate))
                if tentative > q_prime:
                    q_prime = tentative
                    selected = candidate
            if q_prime > q and selected is not None:
                node = work.nodes[i]
                movements.append(Movement(
                    class_name_of(node.label),
                    table.name_of(membership.assignment[i]),
                    table.name_of(selected),
                    step=len(movements) + 1,
                    node_index=i,
                ))
                logger.debug("move %s: %s -> %s (Q %.6f -> %.6f)",
                             node.label, movements[-1].from_package,
                             movements[-1].to_package, q, q_prime)
                membership = membership.with_move(i, selected)
                q = q_prime
                restart = True
                break

    return RefactorResult(mode, initial_q, q, membership, tuple(movements), table)


@dataclass(frozen=True)
class ComparisonRow:
    """Instability of one package under the original, directed-refactored
    and undirected-refactored packagings; None marks a packaging in which
    the package lost all members (merged away)."""

    package: str
    original: float | None
    directed: float | None
    undirected: float | None

    def to_json_dict(self) -> dict:
        def cell(v: float | None) -> float | None:
            return None if v is None else round(v, 3)
        return {"package": self.package, "oi": cell(self.original),
                "di": cell(self.directed), "ui": cell(self.undirected)}


def compare_report(original: InstabilityReport, directed: InstabilityReport,
                   undirected: InstabilityReport) -> list[ComparisonRow]:
    """Side-by-side instability comparison across the three packagings.

    Row order follows the original report, then any package appearing only
    after refactoring, by name.
    """
    oi = original.by_package()
    di = directed.by_package()
    ui = undirected.by_package()
    names = [row.package for row in original.rows]
    extras = sorted((set(di) | set(ui)) - set(oi))
    rows = []
    for name in names + extras:
        rows.append(ComparisonRow(
            name,
            oi[name].instability if name in oi else None,
            di[name].instability if name in di else None,
            ui[name].instability if name in ui else None,
        ))
    return rows
