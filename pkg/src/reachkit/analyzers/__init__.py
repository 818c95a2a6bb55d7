"""
Matching, structure, independence, reach, theorem and spectral analysis.
"""

from .graph_analyzer import GraphAnalyzer
from .independence import IndependenceProfile, independence_number, independence_profile
from .matching import Matching, MatchingAnalyzer, maximum_matching, matching_number
from .reach import FlowerDecomposition, RDisjointVerdict, flower_decomposition, is_r_disjoint, reach_set
from .spectral import adjacency_determinant, check_determinant_conjecture, check_nullspace_decomposition
from .structure import OddCycle, enumerate_odd_cycles, gallai_edmonds, is_konig_egervary
from .theorems import SUITES, CheckStatus, TheoremReport, TheoremVerifier

__all__ = [
    "GraphAnalyzer",
    "IndependenceProfile",
    "independence_number",
    "independence_profile",
    "Matching",
    "MatchingAnalyzer",
    "maximum_matching",
    "matching_number",
    "FlowerDecomposition",
    "RDisjointVerdict",
    "flower_decomposition",
    "is_r_disjoint",
    "reach_set",
    "adjacency_determinant",
    "check_determinant_conjecture",
    "check_nullspace_decomposition",
    "OddCycle",
    "enumerate_odd_cycles",
    "gallai_edmonds",
    "is_konig_egervary",
    "SUITES",
    "CheckStatus",
    "TheoremReport",
    "TheoremVerifier",
]
