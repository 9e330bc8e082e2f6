"""Stateful analysis sessions behind a JSON message protocol.

A session is opened with a graph payload (inline JSON graph, inline GML
text, or a server-side file path) and then driven by commands. The original
snapshot taken at open time (graph, packaging, quality, instability) is
immutable for the session's lifetime; edits only touch the working graph.

Envelopes are ``{"type": ..., "payload": ...}``. Incoming types: ``open``
and ``command``. Outgoing types: ``state``, ``membership``, ``measures``,
``suggestions``, ``instability``, ``graph`` and ``error`` (errors carry
``code``/``message`` at the top level instead of a payload).

The manager is transport-agnostic: the WebSocket and HTTP endpoints both
feed envelopes to :meth:`SessionManager.handle_envelope`.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field

from . import ingest
from .errors import RepkgError, ParseError
from .graph import (AddEdge, AddNode, DependencyGraph, Membership, RemoveEdge,
                    RemoveNode, SetLocked)
from .ingest import PackageTable, membership_from_labels
from .metrics import InstabilityReport, instability_report
from .modularity import quality
from .refactor import RefactorResult, refactor, to_undirected
from .community import fast_greedy

COMMANDS = ("get-original", "refactor-directed", "refactor-undirected",
            "fast-greedy", "cluster-graph", "instability", "edit")


def _message(kind: str, payload: dict) -> dict:
    return {"type": kind, "payload": payload}


def _error(code: str, message: str) -> dict:
    return {"type": "error", "code": code, "message": message}


def _membership_message(membership: Membership, packages: PackageTable | None) -> dict:
    return _message("membership", {
        "membership": list(membership.assignment),
        "packages": list(packages.names) if packages is not None else None,
    })


def _measures_message(q: float) -> dict:
    return _message("measures", {"modularity": round(q, 2)})


def _instability_message(report: InstabilityReport) -> dict:
    return _message("instability", {"packages": report.to_json_rows()})


def _suggestions_message(result: RefactorResult) -> dict:
    return _message("suggestions", {"movements": [m.to_json_dict() for m in result.movements]})


@dataclass
class Session:
    """One analysis session: an immutable original snapshot plus a working graph."""

    session_id: int
    graph: DependencyGraph
    original_graph: DependencyGraph
    original_membership: Membership
    original_packages: PackageTable
    original_q: float
    original_instability: InstabilityReport
    last_results: dict[str, RefactorResult] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def state_message(self) -> dict:
        return _message("state", {
            "sessionId": self.session_id,
            "graph": ingest.graph_to_dict(self.original_graph),
            "membership": list(self.original_membership.assignment),
            "packages": list(self.original_packages.names),
            "modularity": round(self.original_q, 2),
            "instability": self.original_instability.to_json_rows(),
        })


class SessionManager:
    """Owns all sessions; commands within one session run serialized."""

    def __init__(self) -> None:
        self._sessions: dict[int, Session] = {}
        self._ids = itertools.count(1)
        self._lock = threading.Lock()

    # -- lifecycle -----------------------------------------------------------

    def open_session(self, payload: dict) -> tuple[int | None, list[dict]]:
        """Create a session from a graph payload; returns (id, messages)."""
        try:
            graph = self._parse_open_payload(payload)
        except RepkgError as exc:
            return None, [_error("parse", str(exc))]
        except OSError as exc:
            return None, [_error("parse", f"cannot read graph file: {exc}")]
        graph = ingest.ensure_labels(graph.simplify())
        membership, packages = membership_from_labels(graph)
        try:
            q = quality(graph, membership)
        except RepkgError as exc:
            return None, [_error("parse", str(exc))]
        report = instability_report(graph, membership, packages)
        with self._lock:
            session_id = next(self._ids)
            session = Session(session_id, graph, graph, membership, packages, q, report)
            self._sessions[session_id] = session
        return session_id, [session.state_message()]

    @staticmethod
    def _parse_open_payload(payload: dict) -> DependencyGraph:
        if not isinstance(payload, dict):
            raise ParseError("open payload must be an object", field="payload")
        if "graph" in payload:
            import json as _json
            return ingest.parse_json(_json.dumps(payload["graph"]))
        if "gml" in payload:
            return ingest.parse_gml(str(payload["gml"]))
        if "path" in payload:
            return ingest.load_graph(str(payload["path"]), str(payload.get("format", "auto")))
        raise ParseError("open payload needs 'graph', 'gml' or 'path'", field="payload")

    def session(self, session_id: int) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def close_session(self, session_id: int) -> None:
        with self._lock:
            self._sessions.pop(session_id, None)

    # -- protocol ------------------------------------------------------------

    def handle_envelope(self, envelope: dict,
                        session_id: int | None = None) -> tuple[int | None, list[dict]]:
        """Dispatch one incoming envelope; returns (session id, reply messages)."""
        if not isinstance(envelope, dict) or "type" not in envelope:
            return session_id, [_error("bad-envelope", "expected {'type': ..., 'payload': ...}")]
        kind = envelope.get("type")
        payload = envelope.get("payload", {})
        if kind == "open":
            return self.open_session(payload if isinstance(payload, dict) else {})
        if kind == "command":
            if not isinstance(payload, dict):
                return session_id, [_error("bad-envelope", "command payload must be an object")]
            sid = payload.get("sessionId", session_id)
            if sid is None:
                return session_id, [_error("no-session", "no session bound or named")]
            session = self.session(sid)
            if session is None:
                return session_id, [_error("no-session", f"unknown session {sid}")]
            return sid, self.handle_command(session, payload)
        return session_id, [_error("unknown-type", f"unknown envelope type {kind!r}")]

    def handle_command(self, session: Session, payload: dict) -> list[dict]:
        name = payload.get("name")
        if name not in COMMANDS:
            return [_error("unknown-command", f"unknown command {name!r}")]
        with session.lock:
            try:
                return self._run_command(session, name, payload)
            except RepkgError as exc:
                return [_error("command-failed", str(exc))]

    def _run_command(self, session: Session, name: str, payload: dict) -> list[dict]:
        if name == "get-original":
            return [
                _membership_message(session.original_membership, session.original_packages),
                _measures_message(session.original_q),
                _instability_message(session.original_instability),
            ]

        if name in ("refactor-directed", "refactor-undirected"):
            mode = "directed" if name == "refactor-directed" else "undirected"
            result = refactor(session.graph, mode)
            session.last_results[mode] = result
            report = instability_report(session.graph, result.membership, result.packages)
            return [
                _membership_message(result.membership, result.packages),
                _measures_message(result.final_q),
                _suggestions_message(result),
                _instability_message(report),
            ]

        if name == "fast-greedy":
            _, best = fast_greedy(to_undirected(session.graph.simplify()))
            return [
                _membership_message(best, None),
                _measures_message(quality(to_undirected(session.graph.simplify()), best)),
            ]

        if name == "cluster-graph":
            membership, packages = membership_from_labels(session.graph)
            condensed = session.graph.simplify().condense(membership, list(packages.names))
            return [_message("graph", ingest.graph_to_dict(condensed))]

        if name == "instability":
            membership, packages = membership_from_labels(session.graph)
            report = instability_report(session.graph.simplify(), membership, packages)
            return [_instability_message(report)]

        if name == "edit":
            edit = self._parse_edit(payload)
            session.graph = session.graph.apply_edit(edit)
            return [_message("graph", ingest.graph_to_dict(session.graph))]

        raise AssertionError(f"unhandled command {name}")  # pragma: no cover

    @staticmethod
    def _parse_edit(payload: dict):
        op = payload.get("op")
        if op == "add-node":
            return AddNode(str(payload.get("label", "")))
        if op == "remove-node":
            return RemoveNode(int(payload["index"]))
        if op == "add-edge":
            return AddEdge(int(payload["source"]), int(payload["target"]),
                           float(payload.get("weight", 1)))
        if op == "remove-edge":
            return RemoveEdge(int(payload["source"]), int(payload["target"]))
        if op == "set-locked":
            return SetLocked(int(payload["index"]), bool(payload.get("locked", True)))
        raise ParseError(f"unknown edit op {op!r}", field="payload.op")
