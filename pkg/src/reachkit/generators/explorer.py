"""
Exploratory sweep over G(n, p): which of the identities proved for R-disjoint
graphs also hold outside the class. Reports only; nothing here refutes
anything.
"""

import logging
import sys
from typing import Any, Dict, List, Optional

import networkx as nx
import numpy as np
from tqdm import tqdm

from ..analyzers.independence import independence_profile
from ..analyzers.reach import is_r_disjoint
from ..analyzers.structure import is_odd_cycle_disjoint
from ..caps import Caps
from ..exceptions import CapExceeded, DomainError
from ..graphs.formats import serialize_graph
from ..graphs.graph import Graph
from .random_graphs import SCHEMA_VERSION

IDENTITIES = ('ker_eq_core', 'corona_cover', 'corona_core_count')


def evaluate_identities(graph: Graph, caps: Caps) -> Dict[str, Optional[bool]]:
    """
    The three identities on one graph. ``corona_core_count`` is None when the
    odd cycles are not pairwise disjoint, since k is then undefined.
    """
    profile = independence_profile(graph, caps)
    covered = set(profile.corona) | set(graph.neighborhood(profile.core))
    disjointness = is_odd_cycle_disjoint(graph, caps, check_components=False)
    count = None
    if disjointness.disjoint:
        k = len(disjointness.cycles)
        count = len(profile.corona) + len(profile.core) == 2 * profile.alpha + k
    return {
        'ker_eq_core': profile.ker == profile.core,
        'corona_cover': len(covered) == graph.n,
        'corona_core_count': count,
    }


class IdentityExplorer:
    def __init__(self, config: Dict[str, Any] = None, caps: Optional[Caps] = None):
        self.config = config or {}
        self.caps = caps or Caps.from_config(self.config)
        self.logger = logging.getLogger(__name__)

    def run(self, count: int, seed: int, n: int, p: float, progress: bool = True) -> Dict[str, Any]:
        if n < 1 or not 0.0 <= p <= 1.0:
            raise DomainError(f"need n >= 1 and 0 <= p <= 1, got n={n}, p={p}")
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        groups: Dict[str, Dict[str, int]] = {
            name: {'samples': 0, **{identity: 0 for identity in IDENTITIES}}
            for name in ('r_disjoint', 'other')
        }
        outside: List[Dict[str, Any]] = []
        skipped = 0

        for _ in tqdm(range(count), desc="exploring", file=sys.stderr, disable=not progress):
            sample = nx.gnp_random_graph(n, p, seed=int(rng.integers(2 ** 32)))
            graph = Graph.from_networkx(sample)
            try:
                verdict = is_r_disjoint(graph, self.caps)
                identities = evaluate_identities(graph, self.caps)
            except CapExceeded as e:
                self.logger.debug(f"sample skipped: {e}")
                skipped += 1
                continue
            group = groups['r_disjoint' if verdict.is_r_disjoint else 'other']
            group['samples'] += 1
            for name, holds in identities.items():
                if holds:
                    group[name] += 1
            if not verdict.is_r_disjoint and verdict.kind.value != 'no_odd_cycle':
                held = sorted(name for name, holds in identities.items() if holds)
                if held:
                    outside.append({'graph': serialize_graph(graph, 'graph6'),
                                    'verdict': verdict.kind.value, 'identities': held})

        self.logger.info(f"🧭 explored {count} sample(s), {skipped} skipped")
        return {
            'schema_version': SCHEMA_VERSION,
            'kind': 'explore',
            'count': count,
            'seed': seed,
            'n': n,
            'p': p,
            'skipped': skipped,
            'groups': groups,
            'outside_class': outside,
        }
