"""
Graph representation, text formats and fixtures.
"""

from .graph import Edge, Graph, VertexSet, fingerprint, normalize_edge, vertex_set
from .formats import parse_graph, serialize_graph, guess_format
from .fixtures import fixture_names, load_fixture

__all__ = [
    "Edge",
    "Graph",
    "VertexSet",
    "fingerprint",
    "normalize_edge",
    "vertex_set",
    "parse_graph",
    "serialize_graph",
    "guess_format",
    "fixture_names",
    "load_fixture",
]
