"""repkg: dependency-graph analysis and package-refactoring suggestions.

The library models a software system as a directed weighted graph of
classes, derives the current packaging from qualified class names, scores
packagings with directed and undirected partition quality, and greedily
suggests single-class moves that improve the score. Package stability
metrics (afferent/efferent coupling, instability, abstractness, distance
from the main sequence) and stable-dependency checks round out the
analysis; a CLI and a WebSocket session service expose it all.
"""

from .community import Dendrogram, edge_betweenness, fast_greedy, girvan_newman
from .errors import (DirectionError, EmptyGraphError, InvalidMembershipError,
                     NotFoundError, ParseError, RepkgError, UndefinedMetricError)
from .graph import (AddEdge, AddNode, DependencyGraph, Edge, Membership, Node,
                    RemoveEdge, RemoveNode, SetLocked)
from .ingest import (PackageTable, class_name_of, ensure_labels, export_json,
                     graph_to_dict, load_graph, membership_from_labels, package_of,
                     parse_gml, parse_json, write_gml)
from .metrics import (InstabilityReport, PackageInstability, SdpViolation,
                      abstractness, abstractness_by_package, border_nodes,
                      coupling, instability_report, main_sequence_distance,
                      sdp_violations)
from .modularity import (QualityValue, intra_edge_fraction, modularity_directed,
                         modularity_undirected, move_gain, quality)
from .refactor import (ComparisonRow, Movement, RefactorResult, compare_report,
                       refactor, to_undirected)
from .session import SessionManager

__version__ = "0.1.0"

__all__ = [
    "AddEdge", "AddNode", "ComparisonRow", "Dendrogram", "DependencyGraph",
    "DirectionError", "Edge", "EmptyGraphError", "InstabilityReport",
    "InvalidMembershipError", "Membership", "Movement", "Node", "NotFoundError",
    "PackageInstability", "PackageTable", "ParseError", "QualityValue",
    "RefactorResult", "RemoveEdge", "RemoveNode", "RepkgError", "SdpViolation",
    "SetLocked",
    "SessionManager", "UndefinedMetricError", "abstractness",
    "abstractness_by_package", "border_nodes", "class_name_of", "compare_report",
    "coupling", "edge_betweenness", "ensure_labels", "export_json", "fast_greedy",
    "girvan_newman", "graph_to_dict", "instability_report", "intra_edge_fraction",
    "load_graph", "main_sequence_distance", "membership_from_labels",
    "modularity_directed", "modularity_undirected", "move_gain", "package_of",
    "parse_gml", "parse_json", "quality", "refactor", "sdp_violations",
    "to_undirected", "write_gml",
]
