"""Exception types shared across the package."""

from __future__ import annotations


class RepkgError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RepkgError):
    """Malformed input document (GML or JSON)."""

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif field is not None:
            where = f" (field {field})"
        super().__init__(message + where)


class NotFoundError(RepkgError):
    """A referenced node, edge or package does not exist."""


class InvalidMembershipError(RepkgError):
    """A membership does not fit the graph it is applied to."""


class UndefinedMetricError(RepkgError):
    """A metric is undefined for the given input (e.g. no edges, empty package)."""


class EmptyGraphError(RepkgError):
    """An operation that needs at least one node got an empty graph."""


class DirectionError(RepkgError):
    """An undirected-only algorithm was handed an asymmetric graph."""
