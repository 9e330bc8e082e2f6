"""CLI behavior: output formats, exit codes, figure rendering."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from repkg.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_two_triangles_header_and_quality(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", FIXTURES / "two_triangles.json")
        assert code == 0
        assert "packages: 2, classes: 6" in out
        assert "modularity: 0.36" in out
        assert "SDP violations: none" in out

    def test_medium_fixture_header(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", FIXTURES / "sample58.gml")
        assert code == 0
        assert "packages: 6, classes: 58" in out

    def test_empty_file_exits_2(self, capsys, tmp_path):
        empty = tmp_path / "empty.gml"
        empty.write_text("")
        code, _, err = run_cli(capsys, "analyze", empty)
        assert code == 2
        assert "empty" in err

    def test_parse_error_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.gml"
        bad.write_text("graph [ node [ id ] ]")
        code, _, err = run_cli(capsys, "analyze", bad)
        assert code == 1
        assert "error" in err

    def test_missing_file_exits_1(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "analyze", tmp_path / "nope.gml")
        assert code == 1

    def test_instability_lines(self, capsys):
        _, out, _ = run_cli(capsys, "analyze", FIXTURES / "two_triangles.json")
        assert "a  Ca=1  Ce=1  I=0.500" in out


class TestRefactor:
    def test_table_output_sentences(self, capsys):
        code, out, _ = run_cli(capsys, "refactor",
                               FIXTURES / "two_triangles_mislabeled.json")
        assert code == 0
        assert "1. Move class C3 from package a to package b" in out
        assert "final modularity: 0.36" in out

    def test_optimal_fixture_reports_no_movements(self, capsys):
        _, out, _ = run_cli(capsys, "refactor", FIXTURES / "two_triangles.json")
        assert "no movements suggested" in out

    def test_json_output_single_mode(self, capsys):
        code, out, _ = run_cli(capsys, "refactor",
                               FIXTURES / "two_triangles_mislabeled.json",
                               "--output", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["movements"] == [{"class": "C3", "from": "a", "to": "b"}]
        assert doc["finalQExact"] == pytest.approx(5 / 14, abs=1e-12)

    def test_both_mode_emits_comparison(self, capsys):
        code, out, _ = run_cli(capsys, "refactor", FIXTURES / "citation_motif.json",
                               "--mode", "both", "--output", "json")
        doc = json.loads(out)
        assert code == 0
        assert set(doc) == {"directed", "undirected", "comparison"}
        assert doc["directed"]["movements"] == []
        assert doc["undirected"]["movements"] != []
        packages = [row["package"] for row in doc["comparison"]]
        assert packages[:3] == ["ui", "service", "core"]

    def test_both_mode_table_has_oi_di_ui(self, capsys):
        _, out, _ = run_cli(capsys, "refactor", FIXTURES / "citation_motif.json",
                            "--mode", "both")
        assert "instability comparison (OI/DI/UI):" in out
        assert "OI=" in out and "DI=" in out and "UI=" in out


class TestServeDefaults:
    def test_default_port_is_8081(self):
        from repkg.cli import build_parser
        args = build_parser().parse_args(["serve"])
        assert args.port == 8081


class TestFigures:
    def test_analyze_writes_figures(self, capsys, tmp_path):
        out_dir = tmp_path / "figs"
        code, out, _ = run_cli(capsys, "analyze", FIXTURES / "two_triangles.json",
                               "--figures-dir", out_dir)
        assert code == 0
        assert (out_dir / "packages.png").stat().st_size > 0
        assert (out_dir / "instability.png").stat().st_size > 0

    def test_refactor_writes_before_after_and_comparison(self, capsys, tmp_path):
        out_dir = tmp_path / "figs"
        code, _, _ = run_cli(capsys, "refactor", FIXTURES / "citation_motif.json",
                             "--mode", "both", "--figures-dir", out_dir)
        assert code == 0
        for name in ("before.png", "after_directed.png", "after_undirected.png",
                     "comparison.png"):
            assert (out_dir / name).stat().st_size > 0
