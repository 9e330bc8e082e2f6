"""Partition quality measures on dependency graphs.

All measures compare the edge weight that falls inside communities against
a degree-preserving random null model. For a directed graph with total
weight m the quality of a membership C is

    Q = (1/m) * sum_ij [ w_ij - w_i_out * w_j_in / m ] * delta(C_i, C_j)

where the sum runs over all ordered node pairs including i = j. A symmetric
graph evaluated with this expression yields exactly the classic undirected
quality (each undirected edge contributes two arcs, so m plays the role of
2m there); that identity is what lets both variants share one code path.

The evaluation below aggregates per community (intra weight and strength
sums), which is algebraically identical to the double loop over pairs and
returns an exact 0.0 for the single-community partition on integer-weight
graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DirectionError, UndefinedMetricError
from .graph import DependencyGraph, Membership


@dataclass(frozen=True)
class QualityValue:
    """A quality score together with the variant that produced it."""

    value: float
    variant: str  # "directed" or "undirected"
    total_weight: float

    def __post_init__(self) -> None:
        # Loose sanity bound; genuine values live well inside it.
        if not -1.0 <= self.value <= 1.0:
            raise AssertionError(f"quality {self.value} outside [-1, 1]")


def quality(graph: DependencyGraph, membership: Membership) -> float:
    """Raw quality of a membership (shared evaluation for both variants)."""
    if graph.edge_count == 0:
        raise UndefinedMetricError("quality is undefined on a graph with no edges")
    if len(membership) != graph.node_count:
        raise UndefinedMetricError(
            f"membership covers {len(membership)} nodes, graph has {graph.node_count}")
    total = graph.total_weight()
    if total <= 0:
        raise UndefinedMetricError("quality is undefined with zero total weight")
    k = membership.community_count
    intra = [0.0] * k
    for e in graph.edges:
        if membership.assignment[e.source] == membership.assignment[e.target]:
            intra[membership.assignment[e.source]] += e.weight
    out_strength, in_strength = graph.strengths()
    out_sum = [0.0] * k
    in_sum = [0.0] * k
    for i, c in enumerate(membership.assignment):
        out_sum[c] += out_strength[i]
        in_sum[c] += in_strength[i]
    acc = 0.0
    for c in range(k):
        acc += intra[c] - out_sum[c] * in_sum[c] / total
    return acc / total


def modularity_directed(graph: DependencyGraph, membership: Membership) -> QualityValue:
    """Directed(-weighted) quality with an in/out degree-preserving null model."""
    return QualityValue(quality(graph, membership), "directed", graph.total_weight())


def modularity_undirected(graph: DependencyGraph, membership: Membership) -> QualityValue:
    """Classic undirected quality; requires a symmetric graph.

    Asymmetric input raises rather than silently discarding directions;
    callers that want the naive undirected view must symmetrize first.
    """
    if not graph.is_symmetric():
        raise DirectionError("undirected quality needs a symmetric graph")
    return QualityValue(quality(graph, membership), "undirected", graph.total_weight())


def intra_edge_fraction(graph: DependencyGraph, membership: Membership) -> float:
    """Fraction of edge weight that falls inside communities."""
    total = graph.total_weight()
    if graph.edge_count == 0 or total <= 0:
        raise UndefinedMetricError("fraction undefined on a graph with no edges")
    intra = sum(e.weight for e in graph.edges
                if membership.assignment[e.source] == membership.assignment[e.target])
    return intra / total


def move_gain(graph: DependencyGraph, membership: Membership,
              node: int, community: int) -> float:
    """Quality change from reassigning one node.

    Computed as the difference of two full evaluations so it agrees exactly
    with re-running ``quality`` on the moved membership.
    """
    before = quality(graph, membership)
    after = quality(graph, membership.with_move(node, community))
    return after - before
