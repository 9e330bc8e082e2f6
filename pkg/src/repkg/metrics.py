"""Package-level quality metrics.

Afferent/efferent coupling is counted per cross-package dependency edge,
matching the counting that produces comparable published tables: every
cross edge adds one efferent to its source package and one afferent to its
target package, so the two column sums always agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UndefinedMetricError
from .graph import DependencyGraph, Membership
from .ingest import PackageTable


@dataclass(frozen=True)
class PackageInstability:
    package: str
    afferent: int
    efferent: int
    instability: float


@dataclass(frozen=True)
class InstabilityReport:
    rows: tuple[PackageInstability, ...]

    def by_package(self) -> dict[str, PackageInstability]:
        return {row.package: row for row in self.rows}

    def to_json_rows(self) -> list[dict]:
        return [{"package": r.package, "ca": r.afferent, "ce": r.efferent,
                 "instability": round(r.instability, 3)} for r in self.rows]


@dataclass(frozen=True)
class SdpViolation:
    """A dependency from a more stable package to a less stable one."""

    source: str
    target: str
    source_instability: float
    target_instability: float
    witnesses: tuple[tuple[str, str], ...]


def instability_report(graph: DependencyGraph, membership: Membership,
                       table: PackageTable) -> InstabilityReport:
    """Per-package afferent/efferent edge counts and instability.

    Rows cover packages that currently have members, in package-id order.
    A package with no cross edges gets instability 0 (maximally stable by
    convention, isolated or not).
    """
    k = membership.community_count
    afferent = [0] * k
    efferent = [0] * k
    for e in graph.edges:
        cs, ct = membership.assignment[e.source], membership.assignment[e.target]
        if cs != ct:
            efferent[cs] += 1
            afferent[ct] += 1
    members = [0] * k
    for c in membership.assignment:
        members[c] += 1
    rows = []
    for c in range(k):
        if members[c] == 0:
            continue
        total = afferent[c] + efferent[c]
        value = efferent[c] / total if total else 0.0
        rows.append(PackageInstability(table.name_of(c), afferent[c], efferent[c], value))
    return InstabilityReport(tuple(rows))


def abstractness(abstract_count: int, class_count: int) -> float:
    """Share of abstract classes in a package."""
    if class_count == 0:
        raise UndefinedMetricError("abstractness is undefined for an empty package")
    if not 0 <= abstract_count <= class_count:
        raise ValueError(f"abstract count {abstract_count} outside 0..{class_count}")
    return abstract_count / class_count


def abstractness_by_package(graph: DependencyGraph, membership: Membership,
                            table: PackageTable) -> dict[str, float | None]:
    """Per-package abstractness; None when any member lacks the flag."""
    out: dict[str, float | None] = {}
    for c, members in enumerate(membership.communities()):
        if not members:
            continue
        flags = [graph.nodes[i].abstract for i in members]
        if any(flag is None for flag in flags):
            out[table.name_of(c)] = None
        else:
            out[table.name_of(c)] = abstractness(sum(bool(f) for f in flags), len(members))
    return out


def main_sequence_distance(abstractness_value: float, instability: float) -> tuple[float, float]:
    """Distance from the A + I = 1 line: returns (D, D').

    D' = |A + I - 1| ranges over [0, 1]; D = D'/sqrt(2) is the Euclidean
    distance in the A-I plane.
    """
    d_prime = abs(abstractness_value + instability - 1.0)
    return d_prime / math.sqrt(2.0), d_prime


def coupling(graph: DependencyGraph, membership: Membership, table: PackageTable,
             package_a: str, package_b: str) -> float:
    """Total dependency weight between two packages, both directions.

    With unit weights this counts the connected ordered class pairs; weights
    act as relation multiplicity. Either package being empty yields 0.
    """
    if package_a == package_b:
        raise ValueError("coupling needs two distinct packages")
    ca = table.id_of(package_a)
    cb = table.id_of(package_b)
    total = 0.0
    for e in graph.edges:
        cs, ct = membership.assignment[e.source], membership.assignment[e.target]
        if (cs, ct) in ((ca, cb), (cb, ca)):
            total += e.weight
    return total


def border_nodes(graph: DependencyGraph, membership: Membership) -> set[int]:
    """Nodes incident, in either direction, to at least one cross-package edge."""
    out: set[int] = set()
    for e in graph.edges:
        if membership.assignment[e.source] != membership.assignment[e.target]:
            out.add(e.source)
            out.add(e.target)
    return out


def sdp_violations(graph: DependencyGraph, membership: Membership,
                   table: PackageTable) -> list[SdpViolation]:
    """Dependencies that point from a more stable package to a less stable one.

    For every ordered package pair (S, T) with at least one S -> T edge and
    I_S < I_T, one violation is emitted carrying all witness edges. Output
    is ordered by source then target package name.
    """
    report = instability_report(graph, membership, table)
    inst = {row.package: row.instability for row in report.rows}
    witnesses: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for e in graph.edges:
        cs, ct = membership.assignment[e.source], membership.assignment[e.target]
        if cs == ct:
            continue
        source, target = table.name_of(cs), table.name_of(ct)
        if inst[source] < inst[target]:
            witnesses.setdefault((source, target), []).append(
                (graph.nodes[e.source].label, graph.nodes[e.target].label))
    out = []
    for (source, target) in sorted(witnesses):
        out.append(SdpViolation(source, target, inst[source], inst[target],
                                tuple(sorted(witnesses[(source, target)]))))
    return out
