"""
Random instance generation, conjecture search, exploration and reports.
"""

from .conjecture_search import ConjectureSearch, SearchSummary
from .explorer import IdentityExplorer
from .random_graphs import GenParams, RDisjointGenerator, generate_r_disjoint, sample_params
from .report_generator import ReportGenerator

__all__ = [
    "ConjectureSearch",
    "SearchSummary",
    "IdentityExplorer",
    "GenParams",
    "RDisjointGenerator",
    "generate_r_disjoint",
    "sample_params",
    "ReportGenerator",
]
