#!/usr/bin/env python3
"""
reachkit

Maximum matchings, Gallai-Edmonds structure, reach sets of odd cycles and the
flower decomposition of R-disjoint graphs, with exact theorem checks and a
seeded counterexample search for the spectral conjectures.
"""

__version__ = "0.1.0"

from .main import main
from .analyzers.graph_analyzer import GraphAnalyzer
from .analyzers.theorems import TheoremVerifier
from .generators.random_graphs import GenParams, RDisjointGenerator
from .generators.report_generator import ReportGenerator
from .graphs import Graph, load_fixture, parse_graph, serialize_graph

__all__ = [
    "main",
    "GraphAnalyzer",
    "TheoremVerifier",
    "GenParams",
    "RDisjointGenerator",
    "ReportGenerator",
    "Graph",
    "load_fixture",
    "parse_graph",
    "serialize_graph",
]
