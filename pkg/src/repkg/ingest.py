"""Graph ingestion: GML and JSON readers/writers, package derivation.

The GML subset understood here is the interchange shape emitted by common
bytecode/dependency extractors::

    graph [
      directed 1
      node [ id 0 label "pkg.ClassName" ]
      edge [ source 0 target 1 value 2 ]
    ]

Unknown keys are ignored on read and never emitted. A missing ``directed``
key is treated as directed, since class dependencies are directional.

The initial packaging of a graph is derived from node labels: the package
of ``"a.b.C"`` is ``"a.b"``; a label without a dot is its own package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import NotFoundError, ParseError
from .graph import DependencyGraph, Edge, Membership, Node


@dataclass(frozen=True)
class PackageTable:
    """Bijection between package names and dense community ids."""

    names: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def name_of(self, community: int) -> str:
        if not 0 <= community < len(self.names):
            raise NotFoundError(f"no package with id {community}")
        return self.names[community]

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise NotFoundError(f"no package named {name!r}") from None


def package_of(label: str) -> str:
    """Package part of a qualified name (the label itself when undotted)."""
    if "." in label:
        return label.rsplit(".", 1)[0]
    return label


def class_name_of(label: str) -> str:
    """Class part of a qualified name (last dot segment)."""
    return label.rsplit(".", 1)[-1]


def ensure_labels(graph: DependencyGraph) -> DependencyGraph:
    """Fill empty labels deterministically as ``anon<i>.C<i>``."""
    if all(v.label for v in graph.nodes):
        return graph
    nodes = [v if v.label else Node(v.index, f"anon{v.index}.C{v.index}", v.abstract, v.locked)
             for v in graph.nodes]
    return DependencyGraph(nodes, graph.edges, graph.directed)


def membership_from_labels(graph: DependencyGraph) -> tuple[Membership, PackageTable]:
    """Group nodes into communities by package prefix of their labels.

    Community ids follow first appearance of each package in node order.
    When every node lands in a single package the grouping carries no
    information, so it falls back to singleton communities named by the
    full class labels (de-duplicated with ``#n`` suffixes).
    """
    graph = ensure_labels(graph)
    ids: dict[str, int] = {}
    assignment = []
    for v in graph.nodes:
        pkg = package_of(v.label)
        if pkg not in ids:
            ids[pkg] = len(ids)
        assignment.append(ids[pkg])
    if len(ids) == 1 and graph.node_count > 1:
        names: list[str] = []
        seen: dict[str, int] = {}
        for v in graph.nodes:
            name = v.label
            if name in seen:
                seen[name] += 1
                name = f"{name}#{seen[name]}"
            else:
                seen[name] = 1
            names.append(name)
        return (Membership(tuple(range(graph.node_count)), graph.node_count),
                PackageTable(tuple(names)))
    table = PackageTable(tuple(ids))
    return Membership(tuple(assignment), len(ids)), table


# ---------------------------------------------------------------------------
# GML
# ---------------------------------------------------------------------------

_GML_ESCAPES = {"\\": "\\\\", '"': '\\"'}


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    is_string: bool = False


def _tokenize_gml(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
        elif ch.isspace():
            i += 1
        elif ch == "#":  # comment to end of line
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "[]":
            tokens.append(_Token(ch, line))
            i += 1
        elif ch == '"':
            start_line = line
            i += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    buf.append(text[i + 1])
                    i += 2
                    continue
                if text[i] == "\n":
                    line += 1
                buf.append(text[i])
                i += 1
            if i >= n:
                raise ParseError("unterminated string", line=start_line)
            i += 1
            tokens.append(_Token("".join(buf), start_line, is_string=True))
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '[]"':
                j += 1
            tokens.append(_Token(text[i:j], line))
            i = j
    return tokens


class _GmlReader:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1].line if self.tokens else 1
            raise ParseError("unexpected end of document", line=last)
        self.pos += 1
        return tok

    def read_block(self) -> list[tuple[str, object, int]]:
        """Key/value pairs until the matching ']'. Values are str, float or list."""
        items: list[tuple[str, object, int]] = []
        while True:
            tok = self.peek()
            if tok is None:
                raise ParseError("missing closing ']'", line=self.tokens[-1].line)
            if tok.text == "]" and not tok.is_string:
                self.next()
                return items
            key = self.next()
            if key.is_string or key.text == "[":
                raise ParseError(f"expected key, got {key.text!r}", line=key.line)
            value = self.next()
            if value.text == "[" and not value.is_string:
                items.append((key.text, self.read_block(), key.line))
            else:
                items.append((key.text, value.text if value.is_string
                              else _parse_scalar(value), key.line))


def _parse_scalar(tok: _Token) -> object:
    try:
        return float(tok.text) if "." in tok.text or "e" in tok.text.lower() else int(tok.text)
    except ValueError:
        return tok.text


def parse_gml(text: str) -> DependencyGraph:
    """Parse the GML subset into a graph.

    Nodes are ordered by their GML ids and re-indexed densely. An edge
    endpoint that names no node raises a reference error.
    """
    reader = _GmlReader(_tokenize_gml(text))
    top = reader.peek()
    if top is None:
        raise ParseError("empty document", line=1)
    graph_items = None
    while reader.peek() is not None:
        key = reader.next()
        if key.is_string or key.text in "[]":
            raise ParseError(f"expected key, got {key.text!r}", line=key.line)
        value = reader.next()
        if value.text == "[" and not value.is_string:
            block = reader.read_block()
            if key.text == "graph":
                graph_items = block
                break
        # top-level scalars (Creator, Version, ...) are skipped
    if graph_items is None:
        raise ParseError("no graph block found", line=top.line)

    directed = True
    raw_nodes: list[tuple[int, dict, int]] = []
    raw_edges: list[tuple[dict, int]] = []
    for key, value, line in graph_items:
        if key == "directed":
            directed = bool(value)
        elif key == "node":
            if not isinstance(value, list):
                raise ParseError("node must be a block", line=line)
            attrs = {k: v for k, v, _ in value}
            if "id" not in attrs:
                raise ParseError("node without id", line=line)
            raw_nodes.append((int(attrs["id"]), attrs, line))
        elif key == "edge":
            if not isinstance(value, list):
                raise ParseError("edge must be a block", line=line)
            raw_edges.append(({k: v for k, v, _ in value}, line))
        # unknown keys ignored

    raw_nodes.sort(key=lambda item: item[0])
    index_of: dict[int, int] = {}
    nodes = []
    for position, (gml_id, attrs, line) in enumerate(raw_nodes):
        if gml_id in index_of:
            raise ParseError(f"duplicate node id {gml_id}", line=line)
        index_of[gml_id] = position
        abstract = attrs.get("abstract")
        nodes.append(Node(position, str(attrs.get("label", "")),
                          None if abstract is None else bool(abstract),
                          bool(attrs.get("locked", False))))

    edges = []
    for attrs, line in raw_edges:
        if "source" not in attrs or "target" not in attrs:
            raise ParseError("edge without source/target", line=line)
        src, dst = int(attrs["source"]), int(attrs["target"])
        if src not in index_of or dst not in index_of:
            raise NotFoundError(f"edge ({src},{dst}) references a missing node id")
        weight = float(attrs.get("value", 1.0))
        if weight < 0:
            raise ParseError(f"negative edge weight {weight}", line=line)
        edges.append(Edge(index_of[src], index_of[dst], weight))

    graph = DependencyGraph(nodes, edges, directed)
    if not directed:
        graph = _mirror(graph)
    return graph


def write_gml(graph: DependencyGraph) -> str:
    """Serialize to the GML subset. Undirected graphs emit each pair once."""
    lines = ["graph [", f"  directed {1 if graph.directed else 0}"]
    for v in graph.nodes:
        label = v.label
        for raw, escaped in _GML_ESCAPES.items():
            label = label.replace(raw, escaped)
        attrs = f'    id {v.index}\n    label "{label}"'
        if v.abstract is not None:
            attrs += f"\n    abstract {1 if v.abstract else 0}"
        if v.locked:
            attrs += "\n    locked 1"
        lines.append(f"  node [\n{attrs}\n  ]")
    for u, v, w in _export_arcs(graph):
        value = f"\n    value {_format_weight(w)}" if w != 1 else ""
        lines.append(f"  edge [\n    source {u}\n    target {v}{value}\n  ]")
    lines.append("]")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def parse_json(text: str) -> DependencyGraph:
    """Parse the JSON graph schema; errors name the offending field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", field="$")
    directed = doc.get("directed", True)
    if not isinstance(directed, bool):
        raise ParseError("must be a boolean", field="directed")
    raw_nodes = doc.get("nodes", [])
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_nodes, list):
        raise ParseError("must be an array", field="nodes")
    if not isinstance(raw_edges, list):
        raise ParseError("must be an array", field="edges")

    nodes = []
    for i, item in enumerate(raw_nodes):
        if not isinstance(item, dict):
            raise ParseError("must be an object", field=f"nodes[{i}]")
        label = item.get("label", "")
        if not isinstance(label, str):
            raise ParseError("must be a string", field=f"nodes[{i}].label")
        abstract = item.get("abstract")
        if abstract is not None and not isinstance(abstract, bool):
            raise ParseError("must be a boolean", field=f"nodes[{i}].abstract")
        locked = item.get("locked", False)
        if not isinstance(locked, bool):
            raise ParseError("must be a boolean", field=f"nodes[{i}].locked")
        nodes.append(Node(i, label, abstract, locked))

    edges = []
    for i, item in enumerate(raw_edges):
        if not isinstance(item, dict):
            raise ParseError("must be an object", field=f"edges[{i}]")
        for end in ("source", "target"):
            if not isinstance(item.get(end), int) or isinstance(item.get(end), bool):
                raise ParseError("must be an integer", field=f"edges[{i}].{end}")
            if not 0 <= item[end] < len(nodes):
                raise NotFoundError(f"edges[{i}].{end} references missing node {item[end]}")
        weight = item.get("weight", 1)
        if not isinstance(weight, (int, float)) or isinstance(weight, bool):
            raise ParseError("must be a number", field=f"edges[{i}].weight")
        if weight < 0:
            raise ParseError("must be nonnegative", field=f"edges[{i}].weight")
        edges.append(Edge(item["source"], item["target"], float(weight)))

    graph = DependencyGraph(nodes, edges, directed)
    if not directed:
        graph = _mirror(graph)
    return graph


def graph_to_dict(graph: DependencyGraph) -> dict:
    """JSON-schema dict form (inverse of parse_json)."""
    nodes = []
    for v in graph.nodes:
        item: dict = {"label": v.label}
        if v.abstract is not None:
            item["abstract"] = v.abstract
        if v.locked:
            item["locked"] = True
        nodes.append(item)
    edges = []
    for u, v, w in _export_arcs(graph):
        item = {"source": u, "target": v}
        if w != 1:
            item["weight"] = w
        edges.append(item)
    return {"directed": graph.directed, "nodes": nodes, "edges": edges}


def export_json(graph: DependencyGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _mirror(graph: DependencyGraph) -> DependencyGraph:
    """Materialize the symmetric closure of an undirected edge list."""
    edges = []
    for e in graph.edges:
        edges.append(e)
        if e.source != e.target:
            edges.append(Edge(e.target, e.source, e.weight))
    return DependencyGraph(graph.nodes, edges, False).simplify()


def _export_arcs(graph: DependencyGraph) -> list[tuple[int, int, float]]:
    """Arcs to serialize: all of them when directed, one per pair otherwise."""
    adj = graph.adjacency()
    if graph.directed:
        return sorted((u, v, w) for (u, v), w in adj.items())
    return sorted((u, v, w) for (u, v), w in adj.items() if u <= v)


def _format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(w)


def detect_format(path: str | Path, text: str) -> str:
    """Pick 'gml' or 'json' from the extension, falling back to content."""
    suffix = Path(path).suffix.lower()
    if suffix == ".gml":
        return "gml"
    if suffix == ".json":
        return "json"
    stripped = text.lstrip()
    return "json" if stripped.startswith("{") else "gml"


def load_graph(path: str | Path, fmt: str = "auto") -> DependencyGraph:
    """Read a graph file in GML or JSON, auto-detecting by default."""
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "auto":
        fmt = detect_format(path, text)
    if fmt == "gml":
        return parse_gml(text)
    if fmt == "json":
        return parse_json(text)
    raise ValueError(f"unknown format {fmt!r}")
