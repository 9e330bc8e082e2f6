"""Command-line interface: analyze, refactor, serve.

Exit codes: 0 success, 1 parse error, 2 empty graph, 3 port unavailable.
Modularity is displayed with 2 decimals; JSON output keeps full precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import EmptyGraphError, NotFoundError, ParseError, RepkgError
from .graph import DependencyGraph, Membership
from .ingest import PackageTable, ensure_labels, load_graph, membership_from_labels
from .metrics import instability_report, sdp_violations
from .modularity import quality
from .refactor import compare_report, refactor

EXIT_PARSE = 1
EXIT_EMPTY = 2
EXIT_PORT = 3


def _load(path: str, fmt: str) -> DependencyGraph:
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        raise EmptyGraphError(f"{path} is empty")
    graph = load_graph(path, fmt)
    if graph.node_count == 0:
        raise EmptyGraphError(f"{path} contains no nodes")
    return ensure_labels(graph.simplify())


def _packaging(graph: DependencyGraph) -> tuple[Membership, PackageTable]:
    return membership_from_labels(graph)


def cmd_analyze(args: argparse.Namespace) -> int:
    graph = _load(args.input, args.format)
    membership, packages = _packaging(graph)
    report = instability_report(graph, membership, packages)
    violations = sdp_violations(graph, membership, packages)

    print(f"packages: {len(packages)}, classes: {graph.node_count}")
    print(f"modularity: {quality(graph, membership):.2f}")
    print("package instability:")
    for row in report.rows:
        print(f"  {row.package}  Ca={row.afferent}  Ce={row.efferent}  "
              f"I={row.instability:.3f}")
    if violations:
        print("SDP violations:")
        for v in violations:
            print(f"  {v.source} -> {v.target} "
                  f"(I {v.source_instability:.3f} < {v.target_instability:.3f})")
    else:
        print("SDP violations: none")

    if args.figures_dir:
        from . import report as figures
        out = Path(args.figures_dir)
        out.mkdir(parents=True, exist_ok=True)
        figures.save_membership_figure(graph, membership, out / "packages.png",
                                       title="current packaging")
        figures.save_instability_figure(report, out / "instability.png")
        print(f"figures written to {out}")
    return 0


def cmd_refactor(args: argparse.Namespace) -> int:
    graph = _load(args.input, args.format)
    membership, packages = _packaging(graph)
    modes = ["directed", "undirected"] if args.mode == "both" else [args.mode]
    results = {mode: refactor(graph, mode) for mode in modes}

    comparison = None
    if args.mode == "both":
        original = instability_report(graph, membership, packages)
        directed = instability_report(graph, results["directed"].membership,
                                      results["directed"].packages)
        undirected = instability_report(graph, results["undirected"].membership,
                                        results["undirected"].packages)
        comparison = compare_report(original, directed, undirected)

    if args.output == "json":
        if args.mode == "both":
            doc = {
                "directed": results["directed"].to_json_dict(),
                "undirected": results["undirected"].to_json_dict(),
                "comparison": [row.to_json_dict() for row in comparison or []],
            }
        else:
            doc = results[modes[0]].to_json_dict()
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for mode in modes:
            result = results[mode]
            print(f"mode: {mode}")
            print(f"initial modularity: {result.initial_q:.2f}")
            print(f"final modularity: {result.final_q:.2f}")
            if result.movements:
                print("suggestions:")
                for m in result.movements:
                    print(f"  {m.step}. {m.sentence()}")
            else:
                print("no movements suggested")
        if comparison is not None:
            print("instability comparison (OI/DI/UI):")
            for row in comparison:
                def cell(v: float | None) -> str:
                    return "merged" if v is None else f"{v:.3f}"
                print(f"  {row.package}  OI={cell(row.original)}  "
                      f"DI={cell(row.directed)}  UI={cell(row.undirected)}")

    if args.figures_dir:
        from . import report as figure_mod
        out = Path(args.figures_dir)
        out.mkdir(parents=True, exist_ok=True)
        figure_mod.save_membership_figure(graph, membership, out / "before.png",
                                          title="original packaging")
        for mode in modes:
            figure_mod.save_membership_figure(
                graph, results[mode].membership, out / f"after_{mode}.png",
                title=f"{mode} refactoring")
        if comparison is not None:
            figure_mod.save_comparison_figure(comparison, out / "comparison.png")
        print(f"figures written to {out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve
    return serve(port=args.port, ui_dir=args.ui_dir)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repkg",
        description="Analyze class dependency graphs and suggest package refactorings.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="print metrics for a dependency graph")
    analyze.add_argument("input", help="graph file (GML or JSON)")
    analyze.add_argument("--format", choices=("gml", "json", "auto"), default="auto")
    analyze.add_argument("--figures-dir", help="also render figures into this directory")
    analyze.set_defaults(func=cmd_analyze)

    refactor_cmd = sub.add_parser("refactor", help="suggest quality-improving class moves")
    refactor_cmd.add_argument("input", help="graph file (GML or JSON)")
    refactor_cmd.add_argument("--format", choices=("gml", "json", "auto"), default="auto")
    refactor_cmd.add_argument("--mode", choices=("directed", "undirected", "both"),
                              default="directed")
    refactor_cmd.add_argument("--output", choices=("json", "table"), default="table")
    refactor_cmd.add_argument("--figures-dir", help="also render figures into this directory")
    refactor_cmd.set_defaults(func=cmd_refactor)

    serve_cmd = sub.add_parser("serve", help="run the interactive analysis service")
    serve_cmd.add_argument("--port", type=int, default=8081)
    serve_cmd.add_argument("--ui-dir", help="static UI bundle to serve")
    serve_cmd.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EmptyGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ParseError, NotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RepkgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
