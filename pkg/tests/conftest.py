"""Shared fixtures: canonical graphs exercised across the suite."""

from __future__ import annotations

from pathlib import Path

import pytest

from repkg import DependencyGraph, Edge, Node, load_graph

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture()
def two_triangles() -> DependencyGraph:
    """Two 3-cliques joined by one bridge, symmetric, packages a and b."""
    return load_graph(FIXTURES / "two_triangles.json")


@pytest.fixture()
def mislabeled_triangles() -> DependencyGraph:
    """Same shape, but one b-triangle class is labeled into package a."""
    return load_graph(FIXTURES / "two_triangles_mislabeled.json")


@pytest.fixture()
def citation_motif() -> DependencyGraph:
    """Layered ui -> service -> core system, packaged by layer.

    The layer packaging satisfies the stable-dependencies rule and is a
    strict local optimum of the directed quality, while the symmetrized
    view pulls classes across layers.
    """
    return load_graph(FIXTURES / "citation_motif.json")


@pytest.fixture()
def directed_triangles() -> DependencyGraph:
    """Directed variant: both triangles as cycles, a single bridge arc."""
    nodes = [Node(i, f"{'a' if i < 3 else 'b'}.C{i}") for i in range(6)]
    arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]
    return DependencyGraph(nodes, [Edge(u, v) for u, v in arcs], True)
