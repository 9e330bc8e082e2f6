"""Directed weighted dependency-graph model.

Vertices are classes, edges are dependencies, communities are packages.
Graphs are treated as immutable: every operation returns a new value, so
they are safe to share across threads and sessions.

An undirected graph is represented as a symmetric directed graph
(``directed=False``): presence of an arc (u, v) implies (v, u) with the
same weight. This keeps a single formula path for every quality measure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidMembershipError, NotFoundError


@dataclass(frozen=True)
class Node:
    """A class-level vertex.

    The label is a qualified name such as ``"pkg.sub.ClassName"``; the dotted
    prefix carries the package. ``abstract`` is tri-state: None means the
    ingested data did not say.
    """

    index: int
    label: str = ""
    abstract: bool | None = None
    locked: bool = False


@dataclass(frozen=True)
class Edge:
    """A weighted dependency arc between two node indices."""

    source: int
    target: int
    weight: float = 1.0


@dataclass(frozen=True)
class Membership:
    """Assignment of every node to a community (package) id.

    ``community_count`` is the number of community slots; after refactoring
    a slot may become empty but ids keep their meaning so package names
    stay resolvable.
    """

    assignment: tuple[int, ...]
    community_count: int

    def __post_init__(self) -> None:
        for c in self.assignment:
            if not 0 <= c < self.community_count:
                raise InvalidMembershipError(
                    f"community id {c} outside 0..{self.community_count - 1}"
                )

    @classmethod
    def from_list(cls, assignment: list[int] | tuple[int, ...]) -> "Membership":
        count = max(assignment) + 1 if assignment else 0
        return cls(tuple(assignment), count)

    def __len__(self) -> int:
        return len(self.assignment)

    def with_move(self, node: int, community: int) -> "Membership":
        """Return a copy with one node reassigned. Community ids are kept."""
        if not 0 <= community < self.community_count:
            raise InvalidMembershipError(f"unknown community {community}")
        new = list(self.assignment)
        new[node] = community
        return Membership(tuple(new), self.community_count)

    def communities(self) -> list[list[int]]:
        """Members per community id; empty slots yield empty lists."""
        out: list[list[int]] = [[] for _ in range(self.community_count)]
        for i, c in enumerate(self.assignment):
            out[c].append(i)
        return out

    def relabelled_dense(self) -> "Membership":
        """Re-number communities densely by first appearance in node order."""
        mapping: dict[int, int] = {}
        new = []
        for c in self.assignment:
            if c not in mapping:
                mapping[c] = len(mapping)
            new.append(mapping[c])
        return Membership(tuple(new), len(mapping) if new else 0)


# Graph-edit commands. apply_edit() dispatches on these.

@dataclass(frozen=True)
class AddNode:
    label: str


@dataclass(frozen=True)
class RemoveNode:
    index: int


@dataclass(frozen=True)
class AddEdge:
    source: int
    target: int
    weight: float = 1.0


@dataclass(frozen=True)
class RemoveEdge:
    source: int
    target: int


@dataclass(frozen=True)
class SetLocked:
    index: int
    locked: bool


Edit = AddNode | RemoveNode | AddEdge | RemoveEdge | SetLocked


class DependencyGraph:
    """Directed weighted simple graph with dense integer node indices."""

    def __init__(self, nodes: list[Node] | tuple[Node, ...],
                 edges: list[Edge] | tuple[Edge, ...],
                 directed: bool = True):
        self.nodes: tuple[Node, ...] = tuple(nodes)
        self.edges: tuple[Edge, ...] = tuple(edges)
        self.directed = directed
        n = len(self.nodes)
        for i, node in enumerate(self.nodes):
            if node.index != i:
                raise ValueError(f"node at position {i} carries index {node.index}")
        for e in self.edges:
            if not (0 <= e.source < n and 0 <= e.target < n):
                raise NotFoundError(f"edge ({e.source},{e.target}) references a missing node")
            if e.weight < 0:
                raise ValueError(f"negative edge weight {e.weight}")
        self._adjacency: dict[tuple[int, int], float] | None = None
        self._strengths: tuple[list[float], list[float]] | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def labels(self) -> list[str]:
        return [v.label for v in self.nodes]

    def total_weight(self) -> float:
        return sum(e.weight for e in self.edges)

    def adjacency(self) -> dict[tuple[int, int], float]:
        """Arc weights keyed by (source, target); parallel arcs summed."""
        if self._adjacency is None:
            adj: dict[tuple[int, int], float] = {}
            for e in self.edges:
                key = (e.source, e.target)
                adj[key] = adj.get(key, 0.0) + e.weight
            self._adjacency = adj
        return self._adjacency

    def strengths(self) -> tuple[list[float], list[float]]:
        """Per-node (outgoing, incoming) weight sums."""
        if self._strengths is None:
            out = [0.0] * self.node_count
            inc = [0.0] * self.node_count
            for e in self.edges:
                out[e.source] += e.weight
                inc[e.target] += e.weight
            self._strengths = (out, inc)
        return self._strengths

    def out_neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.node_count)]
        for (u, v) in self.adjacency():
            nbrs[u].append(v)
        for lst in nbrs:
            lst.sort()
        return nbrs

    def is_simple(self) -> bool:
        seen = set()
        for e in self.edges:
            if e.source == e.target or (e.source, e.target) in seen or e.weight <= 0:
                return False
            seen.add((e.source, e.target))
        return True

    def is_symmetric(self) -> bool:
        """True when every arc has an equal-weight reverse arc."""
        adj = self.adjacency()
        return all(u == v or adj.get((v, u)) == w for (u, v), w in adj.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DependencyGraph):
            return NotImplemented
        return (self.nodes == other.nodes and self.directed == other.directed
                and self._canonical_edges() == other._canonical_edges())

    def __hash__(self) -> int:  # pragma: no cover - graphs are not dict keys in practice
        return hash((self.nodes, self._canonical_edges(), self.directed))

    def _canonical_edges(self) -> tuple[tuple[int, int, float], ...]:
        adj = self.adjacency()
        return tuple(sorted((u, v, w) for (u, v), w in adj.items()))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"DependencyGraph({self.node_count} nodes, {self.edge_count} edges, {kind})"

    # -- operations ---------------------------------------------------------

    def simplify(self) -> "DependencyGraph":
        """Drop self-loops and collapse parallel arcs by summing weights.

        Idempotent; keeps the node set and the first-seen order of arcs.
        """
        merged: dict[tuple[int, int], float] = {}
        order: list[tuple[int, int]] = []
        for e in self.edges:
            if e.source == e.target:
                continue
            key = (e.source, e.target)
            if key not in merged:
                merged[key] = 0.0
                order.append(key)
            merged[key] += e.weight
        edges = [Edge(u, v, merged[(u, v)]) for (u, v) in order if merged[(u, v)] > 0]
        return DependencyGraph(self.nodes, edges, self.directed)

    def condense(self, membership: Membership,
                 names: list[str] | None = None) -> "DependencyGraph":
        """Cluster graph: one node per community, cross edges merged.

        Intra-community edges are dropped; inter-community weights are summed.
        ``names`` labels the condensed nodes (defaults to ``c<id>``).
        """
        if len(membership) != self.node_count:
            raise InvalidMembershipError(
                f"membership covers {len(membership)} nodes, graph has {self.node_count}"
            )
        k = membership.community_count
        if names is not None and len(names) != k:
            raise InvalidMembershipError(f"expected {k} community names, got {len(names)}")
        nodes = [Node(c, names[c] if names else f"c{c}") for c in range(k)]
        merged: dict[tuple[int, int], float] = {}
        order: list[tuple[int, int]] = []
        for e in self.edges:
            cu, cv = membership.assignment[e.source], membership.assignment[e.target]
            if cu == cv:
                continue
            key = (cu, cv)
            if key not in merged:
                merged[key] = 0.0
                order.append(key)
            merged[key] += e.weight
        edges = [Edge(u, v, merged[(u, v)]) for (u, v) in order]
        return DependencyGraph(nodes, edges, self.directed)

    def apply_edit(self, edit: Edit) -> "DependencyGraph":
        """Apply one graph-edit command and return the edited graph.

        Node removal re-densifies indices. Added edges default to weight 1 and
        merge with an existing arc per the simplify rule. On an undirected
        graph edge edits mirror both arcs to keep the symmetry invariant.
        """
        if isinstance(edit, AddNode):
            nodes = list(self.nodes) + [Node(self.node_count, edit.label)]
            return DependencyGraph(nodes, self.edges, self.directed)

        if isinstance(edit, RemoveNode):
            if not 0 <= edit.index < self.node_count:
                raise NotFoundError(f"no node {edit.index}")
            remap: dict[int, int] = {}
            nodes = []
            for v in self.nodes:
                if v.index == edit.index:
                    continue
                remap[v.index] = len(nodes)
                nodes.append(Node(len(nodes), v.label, v.abstract, v.locked))
            edges = [Edge(remap[e.source], remap[e.target], e.weight)
                     for e in self.edges
                     if e.source != edit.index and e.target != edit.index]
            return DependencyGraph(nodes, edges, self.directed)

        if isinstance(edit, AddEdge):
            self._require_node(edit.source)
            self._require_node(edit.target)
            new = [Edge(edit.source, edit.target, edit.weight)]
            if not self.directed and edit.source != edit.target:
                new.append(Edge(edit.target, edit.source, edit.weight))
            return DependencyGraph(self.nodes, list(self.edges) + new, self.directed).simplify()

        if isinstance(edit, RemoveEdge):
            doomed = {(edit.source, edit.target)}
            if not self.directed:
                doomed.add((edit.target, edit.source))
            if not any((e.source, e.target) in doomed for e in self.edges):
                raise NotFoundError(f"no edge ({edit.source},{edit.target})")
            edges = [e for e in self.edges if (e.source, e.target) not in doomed]
            return DependencyGraph(self.nodes, edges, self.directed)

        if isinstance(edit, SetLocked):
            self._require_node(edit.index)
            nodes = [Node(v.index, v.label, v.abstract, edit.locked)
                     if v.index == edit.index else v for v in self.nodes]
            return DependencyGraph(nodes, self.edges, self.directed)

        raise TypeError(f"unknown edit {edit!r}")

    def _require_node(self, index: int) -> None:
        if not 0 <= index < self.node_count:
            raise NotFoundError(f"no node {index}")
