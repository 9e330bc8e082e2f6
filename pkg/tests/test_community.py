"""Community detection: greedy merging, betweenness, divisive splitting."""

from __future__ import annotations

import random

import pytest

from repkg import (DependencyGraph, DirectionError, Edge, Membership, Node,
                   UndefinedMetricError, edge_betweenness, fast_greedy,
                   girvan_newman, modularity_undirected)

from oracles import (best_partition_quality, enumerated_edge_betweenness,
                     karate_graph, random_directed_graph, random_symmetric_graph,
                     reference_greedy_merge, undirected_graph)


class TestFastGreedy:
    def test_two_triangles_recovers_triangle_partition(self, two_triangles):
        dendrogram, best = fast_greedy(two_triangles)
        assert best.relabelled_dense().assignment == (0, 0, 0, 1, 1, 1)
        assert dendrogram.q_values[dendrogram.best_cut] == pytest.approx(5 / 14, abs=1e-12)
        exhaustive, _ = best_partition_quality(two_triangles)
        assert dendrogram.q_values[dendrogram.best_cut] == pytest.approx(exhaustive, abs=1e-12)

    def test_single_edge_merges_endpoints(self):
        g = undirected_graph(2, [(0, 1)])
        _, best = fast_greedy(g)
        assert best.assignment == (0, 0)
        assert modularity_undirected(g, best).value == 0.0

    def test_karate_matches_reference_run(self):
        g = karate_graph()
        dendrogram, _ = fast_greedy(g)
        assert dendrogram.q_values[dendrogram.best_cut] == pytest.approx(
            reference_greedy_merge(g), abs=1e-9)

    def test_per_step_q_matches_full_evaluation(self):
        rng = random.Random(61)
        for _ in range(10):
            g = random_symmetric_graph(rng, rng.randint(3, 8))
            dendrogram, _ = fast_greedy(g)
            assert len(dendrogram.merges) == g.node_count - 1
            for step, q in enumerate(dendrogram.q_values):
                cut = dendrogram.membership_at(step)
                assert q == pytest.approx(
                    modularity_undirected(g, cut).value, abs=1e-12)

    def test_never_beats_exhaustive_search(self):
        rng = random.Random(62)
        for _ in range(12):
            g = random_symmetric_graph(rng, rng.randint(2, 6))
            dendrogram, _ = fast_greedy(g)
            exhaustive, _ = best_partition_quality(g)
            assert dendrogram.q_values[dendrogram.best_cut] <= exhaustive + 1e-12

    def test_every_cut_is_a_valid_partition(self):
        rng = random.Random(63)
        g = random_symmetric_graph(rng, 7)
        dendrogram, _ = fast_greedy(g)
        for step in range(len(dendrogram.merges) + 1):
            cut = dendrogram.membership_at(step)
            assert len(cut) == g.node_count
            assert set(cut.assignment) == set(range(cut.community_count))

    def test_rejects_directed_input(self):
        g = DependencyGraph([Node(0, "a.A"), Node(1, "b.B")], [Edge(0, 1)], True)
        with pytest.raises(DirectionError):
            fast_greedy(g)

    def test_rejects_edgeless_graph(self):
        g = DependencyGraph([Node(0, "a.A")], [], True)
        with pytest.raises(UndefinedMetricError):
            fast_greedy(g)


class TestEdgeBetweenness:
    def test_path_center_edge_maximal(self):
        g = undirected_graph(4, [(0, 1), (1, 2), (2, 3)])
        scores = edge_betweenness(g)
        assert scores[(1, 2)] == pytest.approx(4.0)
        assert scores[(1, 2)] == max(scores.values())

    def test_star_is_symmetric(self):
        g = undirected_graph(4, [(0, 1), (0, 2), (0, 3)])
        scores = edge_betweenness(g)
        spoke_out = {scores[(0, i)] for i in (1, 2, 3)}
        spoke_in = {scores[(i, 0)] for i in (1, 2, 3)}
        assert len(spoke_out) == 1 and len(spoke_in) == 1

    def test_bridge_strictly_maximal(self, two_triangles):
        scores = edge_betweenness(two_triangles)
        bridge = scores[(2, 3)]
        assert all(v < bridge for arc, v in scores.items() if arc not in ((2, 3), (3, 2)))

    def test_against_path_enumeration(self):
        rng = random.Random(71)
        for _ in range(15):
            g = random_directed_graph(rng, rng.randint(2, 7)).simplify()
            expected = enumerated_edge_betweenness(g)
            actual = edge_betweenness(g)
            assert set(actual) == set(expected)
            for arc in expected:
                assert actual[arc] == pytest.approx(expected[arc], abs=1e-9)


class TestGirvanNewman:
    def test_two_triangles_splits_at_bridge(self, two_triangles):
        dendrogram, best = girvan_newman(two_triangles)
        assert best.relabelled_dense().assignment == (0, 0, 0, 1, 1, 1)
        # the first split separates the triangles, so the last merge rejoins them
        assert dendrogram.merges[-1] == (0, 3)

    def test_triangle_stays_whole(self):
        g = undirected_graph(3, [(0, 1), (1, 2), (0, 2)])
        _, best = girvan_newman(g)
        assert best.community_count == 1

    def test_four_cycle_deterministic(self):
        g = undirected_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        first = girvan_newman(g)
        second = girvan_newman(g)
        assert first[0] == second[0]
        assert first[1] == second[1]

    def test_removes_every_edge_and_ends_in_singletons(self):
        rng = random.Random(73)
        for _ in range(8):
            g = random_symmetric_graph(rng, rng.randint(2, 7))
            dendrogram, _ = girvan_newman(g)
            singleton = dendrogram.membership_at(0)
            assert singleton.community_count == g.node_count
            from repkg.community import _components
            initial = _components(g.node_count, g.adjacency())
            # one recorded split per component-count increase down to singletons
            assert len(dendrogram.merges) == g.node_count - initial.community_count
            components = dendrogram.membership_at(len(dendrogram.merges))
            assert components.assignment == initial.assignment

    def test_rejects_directed_input(self):
        g = DependencyGraph([Node(0, "a.A"), Node(1, "b.B")], [Edge(0, 1)], True)
        with pytest.raises(DirectionError):
            girvan_newman(g)
