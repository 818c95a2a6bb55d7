"""
Whole-graph analysis: runs every engine on one graph and collects the results
into the dictionary the report generator renders.
"""

import logging
from typing import Any, Callable, Dict, List, Optional

from ..caps import Caps
from ..exceptions import CapExceeded
from ..graphs.formats import serialize_graph
from ..graphs.graph import Graph, fingerprint
from .independence import independence_profile
from .matching import MatchingAnalyzer
from .reach import flower_decomposition, is_r_disjoint
from .spectral import check_determinant_conjecture, check_nullspace_decomposition, determinant_summary
from .structure import enumerate_odd_cycles, gallai_edmonds, is_konig_egervary
from .theorems import TheoremVerifier


class GraphAnalyzer:
    """Runs matching, structure, independence, reach, theorem and spectral analysis."""

    def __init__(self, config: Dict[str, Any] = None, caps: Optional[Caps] = None):
        self.config = config or {}
        self.caps = caps or Caps.from_config(self.config)
        self.logger = logging.getLogger(__name__)
        self.skipped: List[str] = []

    def _section(self, name: str, compute: Callable[[], Any]) -> Any:
        try:
            return compute()
        except CapExceeded as e:
            self.logger.warning(f"⚠️ {name} skipped: {e}")
            self.skipped.append(name)
            return {'skipped': str(e)}

    def analyze_graph(self, graph: Graph, suite: str = 'all') -> Dict[str, Any]:
        """
        Full analysis of one graph. Sections that hit a cap hold
        ``{'skipped': reason}`` and are listed under ``skipped``.
        """
        self.skipped = []
        self.logger.info(f"🔍 analyzing graph with n={graph.n}, m={graph.m}")

        results: Dict[str, Any] = {
            'fingerprint': fingerprint(graph),
            'graph': {'n': graph.n, 'm': graph.m, 'graph6': serialize_graph(graph, 'graph6')},
            'matching': MatchingAnalyzer(self.config, self.caps).summarize(graph),
            'gallai_edmonds': gallai_edmonds(graph).to_dict(),
        }
        results['odd_cycles'] = self._section(
            'odd_cycles', lambda: [c.to_list() for c in enumerate_odd_cycles(graph, self.caps)])
        results['independence'] = self._section(
            'independence', lambda: independence_profile(graph, self.caps).to_dict())
        results['konig_egervary'] = self._section(
            'konig_egervary', lambda: is_konig_egervary(graph, self.caps).to_dict())
        results['spectral'] = determinant_summary(graph)

        results['decomposition'] = None
        results['theorems'] = None
        verdict = self._section('r_disjoint', lambda: is_r_disjoint(graph, self.caps))
        if isinstance(verdict, dict):
            results['r_disjoint'] = verdict
        else:
            results['r_disjoint'] = verdict.to_dict()
            if verdict.is_r_disjoint:
                decomposition = flower_decomposition(graph, self.caps, verdict)
                results['decomposition'] = decomposition.to_dict()
                report = TheoremVerifier(self.config, self.caps).verify(graph, suite, decomposition)
                results['theorems'] = report.to_dict()
                self.skipped.extend(f"theorems.{c.name}" for c in report.skipped)
                results['spectral']['determinant_conjecture'] = \
                    check_determinant_conjecture(graph, decomposition).to_dict()
                results['spectral']['nullspace'] = \
                    check_nullspace_decomposition(graph, decomposition).to_dict()

        results['skipped'] = list(self.skipped)
        return results
