"""Ingestion: GML and JSON parsing, serialization, package derivation."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from repkg import (DependencyGraph, Edge, Node, NotFoundError, ParseError,
                   ensure_labels, export_json, load_graph, membership_from_labels,
                   parse_gml, parse_json, package_of, class_name_of, write_gml)
from repkg.ingest import detect_format


MINIMAL_GML = """
graph [
  node [ id 0 label "a.X" ]
  node [ id 1 label "a.Y" ]
  edge [ source 0 target 1 ]
]
"""


class TestGmlParse:
    def test_minimal_document(self):
        g = parse_gml(MINIMAL_GML)
        assert g.node_count == 2
        assert g.edge_count == 1
        assert g.labels() == ["a.X", "a.Y"]
        assert g.directed  # missing key defaults to directed

    def test_medium_fixture_node_count(self, fixtures_dir):
        g = load_graph(fixtures_dir / "sample58.gml")
        assert g.node_count == 58

    def test_dangling_endpoint(self):
        with pytest.raises(NotFoundError):
            parse_gml('graph [ edge [ source 0 target 9 ] ]')

    def test_malformed_reports_line(self):
        bad = 'graph [\n  node [ id 0\n'
        with pytest.raises(ParseError) as err:
            parse_gml(bad)
        assert err.value.line is not None

    def test_unterminated_string(self):
        with pytest.raises(ParseError):
            parse_gml('graph [ node [ id 0 label "oops ] ]')

    def test_unknown_keys_and_blocks_ignored(self):
        text = """
        Creator "someone"
        graph [
          directed 1
          fancy 3.5
          node [ id 0 label "a.X" graphics [ x 1 y 2 w 3 ] ]
          node [ id 1 label "b.Y" ]
          edge [ source 0 target 1 style [ dashed 1 ] ]
        ]
        """
        g = parse_gml(text)
        assert g.node_count == 2 and g.edge_count == 1

    def test_sparse_ids_are_densified_in_id_order(self):
        text = """graph [
          node [ id 10 label "b.B" ]
          node [ id 2 label "a.A" ]
          edge [ source 10 target 2 ]
        ]"""
        g = parse_gml(text)
        assert g.labels() == ["a.A", "b.B"]
        assert (g.edges[0].source, g.edges[0].target) == (1, 0)

    def test_duplicate_node_id(self):
        with pytest.raises(ParseError):
            parse_gml('graph [ node [ id 0 ] node [ id 0 ] ]')

    def test_undirected_document_mirrors_arcs(self):
        text = """graph [
          directed 0
          node [ id 0 label "a.X" ]
          node [ id 1 label "a.Y" ]
          edge [ source 0 target 1 value 2 ]
        ]"""
        g = parse_gml(text)
        assert not g.directed
        assert g.is_symmetric()
        assert g.adjacency() == {(0, 1): 2.0, (1, 0): 2.0}


class TestGmlWrite:
    def test_roundtrip_directed(self, citation_motif):
        assert parse_gml(write_gml(citation_motif)) == citation_motif

    def test_roundtrip_undirected(self, two_triangles):
        assert parse_gml(write_gml(two_triangles)) == two_triangles

    def test_quotes_and_non_ascii_labels(self):
        g = DependencyGraph(
            [Node(0, 'pkg."Weird"\\Name'), Node(1, "pkg.Açúcar")],
            [Edge(0, 1)], True)
        assert parse_gml(write_gml(g)) == g

    def test_weights_and_flags_survive(self):
        g = DependencyGraph(
            [Node(0, "a.X", abstract=True), Node(1, "b.Y", locked=True)],
            [Edge(0, 1, 2.5)], True)
        back = parse_gml(write_gml(g))
        assert back == g
        assert back.nodes[0].abstract is True
        assert back.nodes[1].locked is True


class TestJson:
    def test_minimal(self):
        g = parse_json('{"directed":true,"nodes":[{"label":"a.X"},{"label":"b.Y"}],'
                       '"edges":[{"source":0,"target":1}]}')
        assert g.node_count == 2 and g.edge_count == 1

    def test_negative_weight_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_json('{"nodes":[{"label":"a"},{"label":"b"}],'
                       '"edges":[{"source":0,"target":1,"weight":-1}]}')
        assert "weight" in err.value.field

    def test_bad_field_named(self):
        with pytest.raises(ParseError) as err:
            parse_json('{"nodes":[{"label":42}],"edges":[]}')
        assert err.value.field == "nodes[0].label"

    def test_dangling_reference(self):
        with pytest.raises(NotFoundError):
            parse_json('{"nodes":[{"label":"a"}],"edges":[{"source":0,"target":3}]}')

    def test_roundtrip(self, citation_motif, two_triangles):
        for g in (citation_motif, two_triangles):
            assert parse_json(export_json(g)) == g

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_roundtrip_random(self, data):
        n = data.draw(st.integers(1, 6))
        labels = data.draw(st.lists(
            st.text(st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=8),
            min_size=n, max_size=n))
        arcs = data.draw(st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                      st.integers(1, 4)), max_size=10))
        nodes = [Node(i, labels[i]) for i in range(n)]
        g = DependencyGraph(nodes, [Edge(u, v, float(w)) for u, v, w in arcs],
                            True).simplify()
        assert parse_json(export_json(g)) == g
        assert parse_gml(write_gml(g)) == g


class TestPackaging:
    def test_package_split(self):
        assert package_of("negocio.leitor.LeitorDeModelo") == "negocio.leitor"
        assert class_name_of("negocio.leitor.LeitorDeModelo") == "LeitorDeModelo"

    def test_undotted_label_is_its_own_package(self):
        assert package_of("Main") == "Main"
        assert class_name_of("Main") == "Main"

    def test_medium_fixture_packages(self, fixtures_dir):
        g = load_graph(fixtures_dir / "sample58.gml")
        _, table = membership_from_labels(g)
        assert len(table) == 6

    def test_single_package_falls_back_to_singletons(self):
        nodes = [Node(0, "p.A"), Node(1, "p.B"), Node(2, "p.C")]
        g = DependencyGraph(nodes, [], True)
        m, table = membership_from_labels(g)
        assert m.assignment == (0, 1, 2)
        assert table.names == ("p.A", "p.B", "p.C")

    def test_fallback_names_deduplicated(self):
        nodes = [Node(0, "p.A"), Node(1, "p.A")]
        g = DependencyGraph(nodes, [], True)
        _, table = membership_from_labels(g)
        assert table.names == ("p.A", "p.A#2")

    def test_ids_follow_first_appearance(self):
        nodes = [Node(0, "z.A"), Node(1, "a.B"), Node(2, "z.C")]
        g = DependencyGraph(nodes, [], True)
        m, table = membership_from_labels(g)
        assert table.names == ("z", "a")
        assert m.assignment == (0, 1, 0)

    def test_shared_prefix_shares_community(self):
        nodes = [Node(i, f"pkg.sub.C{i}") for i in range(4)] + [Node(4, "other.D")]
        g = DependencyGraph(nodes, [], True)
        m, _ = membership_from_labels(g)
        assert len({m.assignment[i] for i in range(4)}) == 1
        assert m.assignment[4] != m.assignment[0]

    def test_label_synthesis_is_deterministic(self):
        g = DependencyGraph([Node(0), Node(1, "real.Name")], [], True)
        labeled = ensure_labels(g)
        assert labeled.labels() == ["anon0.C0", "real.Name"]
        m, table = membership_from_labels(g)
        assert table.names == ("anon0", "real")
        assert m.assignment == (0, 1)


class TestFormatDetection:
    def test_by_extension(self):
        assert detect_format("x.gml", "{}") == "gml"
        assert detect_format("x.json", "graph [") == "json"

    def test_by_content(self):
        assert detect_format("x.txt", '  {"nodes": []}') == "json"
        assert detect_format("x.txt", "graph [ ]") == "gml"


class TestGmlInterop:
    """Round trips against another GML producer/consumer."""

    def test_reads_networkx_export(self):
        nx = pytest.importorskip("networkx")
        g = nx.DiGraph()
        g.add_edge("a.X", "b.Y")
        parsed = parse_gml("\n".join(nx.generate_gml(g)))
        assert parsed.labels() == ["a.X", "b.Y"]
        assert parsed.directed
        assert parsed.adjacency() == {(0, 1): 1.0}

    def test_networkx_reads_our_export(self, citation_motif):
        nx = pytest.importorskip("networkx")
        back = nx.parse_gml(write_gml(citation_motif), label="label")
        assert back.is_directed()
        assert back.number_of_nodes() == citation_motif.node_count
        assert back.number_of_edges() == citation_motif.edge_count
