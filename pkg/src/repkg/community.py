"""General community detection for the undirected comparison path.

Both algorithms build a dendrogram (a full hierarchy of partitions) and
return the cut with the highest undirected quality:

* ``fast_greedy`` merges, from singletons, the community pair with the
  largest quality gain per step.
* ``girvan_newman`` divisively removes the edge with the highest
  betweenness per step; splits are recorded in reverse as merges.

Both require a symmetric graph: handing them a directed graph directly
would silently discard directions, which is exactly the failure mode the
directed pipeline exists to avoid, so it is an error instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import DirectionError, EmptyGraphError, UndefinedMetricError
from .graph import DependencyGraph, Edge, Membership
from .modularity import quality


@dataclass(frozen=True)
class Dendrogram:
    """Merge hierarchy over graph nodes.

    ``merges[k]`` joins the two communities identified by their smallest
    member index; ``q_values[k]`` is the quality of the partition after k
    merges (so ``q_values[0]`` scores the singleton partition). ``best_cut``
    is the step index with maximal quality, earliest on ties.
    """

    node_count: int
    merges: tuple[tuple[int, int], ...]
    q_values: tuple[float, ...]
    best_cut: int

    def membership_at(self, step: int) -> Membership:
        """Partition after the first ``step`` merges, densely re-numbered."""
        if not 0 <= step <= len(self.merges):
            raise ValueError(f"step {step} outside 0..{len(self.merges)}")
        parent = list(range(self.node_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.merges[:step]:
            ra, rb = find(a), find(b)
            parent[max(ra, rb)] = min(ra, rb)
        return Membership.from_list([find(i) for i in range(self.node_count)]).relabelled_dense()

    def best_membership(self) -> Membership:
        return self.membership_at(self.best_cut)


def _check_symmetric(graph: DependencyGraph) -> None:
    if graph.node_count == 0:
        raise EmptyGraphError("community detection needs at least one node")
    if not graph.is_symmetric():
        raise DirectionError(
            "community detection runs on symmetric graphs; symmetrize explicitly first")


def fast_greedy(graph: DependencyGraph) -> tuple[Dendrogram, Membership]:
    """Agglomerative quality-greedy clustering.

    Starting from singletons, each step merges the community pair with the
    maximal quality gain (ties: lowest representative pair) until one
    community remains; disconnected pairs merge too once nothing better is
    left, so the dendrogram always has n-1 merges.
    """
    _check_symmetric(graph)
    if graph.edge_count == 0:
        raise UndefinedMetricError("quality-greedy clustering needs at least one edge")
    n = graph.node_count
    total = graph.total_weight()
    out_strength, _ = graph.strengths()

    strength = {i: out_strength[i] for i in range(n)}  # symmetric: out == in
    between: dict[tuple[int, int], float] = {}
    for (u, v), w in graph.adjacency().items():
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        between[key] = between.get(key, 0.0) + w
    membership = list(range(n))
    reps = sorted(strength)
    merges: list[tuple[int, int]] = []
    q_values = [quality(graph, Membership.from_list(membership))]

    for _ in range(n - 1):
        best: tuple[float, tuple[int, int]] | None = None
        for i, ra in enumerate(reps):
            for rb in reps[i + 1:]:
                linked = between.get((ra, rb), 0.0)
                gain = (linked - 2.0 * strength[ra] * strength[rb] / total) / total
                # ties break on the lowest representative pair; reps are scanned
                # in ascending order so only a strictly larger gain wins
                if best is None or gain > best[0]:
                    best = (gain, (ra, rb))
        assert best is not None
        ra, rb = best[1]
        merges.append((ra, rb))
        for key in [k for k in between if rb in k]:
            other = key[0] if key[1] == rb else key[1]
            w = between.pop(key)
            if other == ra:
                continue
            new_key = (min(ra, other), max(ra, other))
            between[new_key] = between.get(new_key, 0.0) + w
        strength[ra] += strength.pop(rb)
        reps.remove(rb)
        for i, c in enumerate(membership):
            if c == rb:
                membership[i] = ra
        q_values.append(quality(graph, Membership.from_list(membership).relabelled_dense()))

    best_cut = max(range(len(q_values)), key=lambda k: (q_values[k], -k))
    dendrogram = Dendrogram(n, tuple(merges), tuple(q_values), best_cut)
    return dendrogram, dendrogram.best_membership()


def edge_betweenness(graph: DependencyGraph) -> dict[tuple[int, int], float]:
    """Shortest-path betweenness per arc (Brandes accumulation).

    Paths are directed and unit-length; each ordered node pair spreads one
    unit over its shortest paths, split evenly among them. On a symmetric
    graph the per-arc value equals the classic undirected edge betweenness.
    """
    n = graph.node_count
    neighbors = graph.out_neighbors()
    scores: dict[tuple[int, int], float] = {arc: 0.0 for arc in graph.adjacency()
                                            if arc[0] != arc[1]}
    for s in range(n):
        dist = [-1] * n
        sigma = [0.0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1.0
        order: list[int] = []
        queue: deque[int] = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in neighbors[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        dependency = [0.0] * n
        for w in reversed(order):
            for v in preds[w]:
                credit = sigma[v] / sigma[w] * (1.0 + dependency[w])
                scores[(v, w)] += credit
                dependency[v] += credit
    return scores


def _components(n: int, adjacency: dict[tuple[int, int], float]) -> Membership:
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for (u, v) in adjacency:
        neighbors[u].append(v)
    labels = [-1] * n
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        queue = deque([start])
        labels[start] = count
        while queue:
            v = queue.popleft()
            for w in neighbors[v]:
                if labels[w] < 0:
                    labels[w] = count
                    queue.append(w)
        count += 1
    return Membership(tuple(labels), count)


def girvan_newman(graph: DependencyGraph) -> tuple[Dendrogram, Membership]:
    """Divisive clustering by repeated max-betweenness edge removal.

    Each round removes one undirected edge (both arcs); ties break on the
    lowest (source, target) arc. Component splits recorded along the way
    are reversed into a merge dendrogram and the max-quality cut returned.
    Quality is always evaluated against the original graph.
    """
    _check_symmetric(graph)
    if graph.edge_count == 0:
        raise UndefinedMetricError("divisive clustering needs at least one edge")
    n = graph.node_count
    work = {arc: w for arc, w in graph.adjacency().items() if arc[0] != arc[1]}
    splits: list[tuple[int, int]] = []

    current = _components(n, work)
    while work:
        # betweenness is recomputed from scratch after every removal
        sub = DependencyGraph(graph.nodes,
                              [Edge(u, v, w) for (u, v), w in sorted(work.items())],
                              graph.directed)
        scores = edge_betweenness(sub)
        target = max(sorted(scores), key=lambda arc: scores[arc])
        work.pop(target, None)
        work.pop((target[1], target[0]), None)
        after = _components(n, work)
        if after.community_count > current.community_count:
            # a binary split: record the two halves by smallest member
            old_blocks = current.communities()
            new_of = after.assignment
            for block in old_blocks:
                parts = sorted({new_of[i] for i in block})
                if len(parts) > 1:
                    halves = [[i for i in block if new_of[i] == p] for p in parts]
                    splits.append((min(halves[0]), min(halves[1])))
            current = after

    merges = tuple(reversed(splits))
    q_values = []
    parentless = Dendrogram(n, merges, (0.0,) * (len(merges) + 1), 0)
    for step in range(len(merges) + 1):
        q_values.append(quality(graph, parentless.membership_at(step)))
    best_cut = max(range(len(q_values)), key=lambda k: (q_values[k], -k))
    dendrogram = Dendrogram(n, merges, tuple(q_values), best_cut)
    return dendrogram, dendrogram.best_membership()
