"""
Maximum matchings, matching enumeration and alternating walks.

The fast engine is Edmonds' blossom algorithm with base contraction, searched
from the lowest unsaturated vertex with neighbors in ascending order, so every
run on the same graph returns the same matching. The enumeration engine is an
exhaustive recursion used as the oracle for everything that quantifies over
"every maximum matching".
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..caps import Caps, DEFAULT_CAPS
from ..exceptions import CapExceeded, DomainError, WalkRejected
from ..graphs.graph import Edge, Graph, normalize_edge

logger = logging.getLogger(__name__)

UNMATCHED = -1


@dataclass(frozen=True)
class Matching:
    """A set of pairwise disjoint edges of ``graph`` with its involution view."""

    graph: Graph = field(repr=False, compare=False)
    edges: FrozenSet[Edge]
    mate: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mate = [UNMATCHED] * self.graph.n
        for u, v in self.edges:
            if not self.graph.has_edge(u, v):
                raise DomainError(f"({u}, {v}) is not an edge of the graph")
            if mate[u] != UNMATCHED or mate[v] != UNMATCHED:
                raise DomainError(f"edge ({u}, {v}) shares a vertex with another matched edge")
            mate[u], mate[v] = v, u
        object.__setattr__(self, 'edges', frozenset(normalize_edge(u, v) for u, v in self.edges))
        object.__setattr__(self, 'mate', tuple(mate))

    @classmethod
    def from_mate(cls, graph: Graph, mate: Sequence[int]) -> "Matching":
        return cls(graph, frozenset(
            (v, w) for v, w in enumerate(mate) if w != UNMATCHED and v < w
        ))

    def __len__(self) -> int:
        return len(self.edges)

    def partner(self, v: int) -> int:
        """M(v); v itself when v is unsaturated."""
        w = self.mate[v]
        return v if w == UNMATCHED else w

    def is_saturated(self, v: int) -> bool:
        return self.mate[v] != UNMATCHED

    def contains(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def unsaturated(self) -> List[int]:
        return [v for v in range(self.graph.n) if self.mate[v] == UNMATCHED]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def restrict(self, vertices: Iterable[int]) -> FrozenSet[Edge]:
        """Matched edges with both endpoints in ``vertices``."""
        members = set(vertices)
        return frozenset(e for e in self.edges if e[0] in members and e[1] in members)

    def serialize(self) -> str:
        return "\n".join(f"{u} {v}" for u, v in self.sorted_edges())


class WalkClass(Enum):
    """Alternating walk classes by the membership of the first and last edge."""
    MM = "mm"
    NN = "nn"
    MN = "mn"
    NM = "nm"


@dataclass(frozen=True)
class AlternatingWalk:
    vertices: Tuple[int, ...]
    in_matching: Tuple[bool, ...]
    walk_class: WalkClass


# ----------------------------------------------------------------------------
# Edmonds' blossom algorithm
# ----------------------------------------------------------------------------

class _BlossomSearch:
    """One augmenting-path search from ``root`` with blossom base contraction."""

    def __init__(self, adjacency: List[List[int]], mate: List[int]):
        self.adjacency = adjacency
        self.mate = mate
        self.n = len(adjacency)

    def _lca(self, a: int, b: int) -> int:
        marked = [False] * self.n
        while True:
            a = self.base[a]
            marked[a] = True
            if self.mate[a] == UNMATCHED:
                break
            a = self.parent[self.mate[a]]
        while True:
            b = self.base[b]
            if marked[b]:
                return b
            b = self.parent[self.mate[b]]

    def _mark_path(self, v: int, blossom_base: int, child: int) -> None:
        while self.base[v] != blossom_base:
            self.in_blossom[self.base[v]] = True
            self.in_blossom[self.base[self.mate[v]]] = True
            self.parent[v] = child
            child = self.mate[v]
            v = self.parent[self.mate[v]]

    def find_path(self, root: int) -> int:
        """Return the far end of an augmenting path from ``root``, or -1."""
        self.used = [False] * self.n
        self.parent = [UNMATCHED] * self.n
        self.base = list(range(self.n))
        self.used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in self.adjacency[v]:
                if self.base[v] == self.base[to] or self.mate[v] == to:
                    continue
                if to == root or (self.mate[to] != UNMATCHED and self.parent[self.mate[to]] != UNMATCHED):
                    current = self._lca(v, to)
                    self.in_blossom = [False] * self.n
                    self._mark_path(v, current, to)
                    self._mark_path(to, current, v)
                    for i in range(self.n):
                        if self.in_blossom[self.base[i]]:
                            self.base[i] = current
                            if not self.used[i]:
                                self.used[i] = True
                                queue.append(i)
                elif self.parent[to] == UNMATCHED:
                    self.parent[to] = v
                    if self.mate[to] == UNMATCHED:
                        return to
                    nxt = self.mate[to]
                    self.used[nxt] = True
                    queue.append(nxt)
        return UNMATCHED

    def augment(self, end: int) -> None:
        v = end
        while v != UNMATCHED:
            pv = self.parent[v]
            ppv = self.mate[pv]
            self.mate[v] = pv
            self.mate[pv] = v
            v = ppv


def maximum_matching(graph: Graph) -> Matching:
    """A maximum matching, deterministic for a fixed labeling."""
    adjacency = [graph.neighbors(v) for v in range(graph.n)]
    mate = [UNMATCHED] * graph.n
    search = _BlossomSearch(adjacency, mate)
    for root in range(graph.n):
        if mate[root] != UNMATCHED:
            continue
        end = search.find_path(root)
        if end != UNMATCHED:
            search.augment(end)
    matching = Matching.from_mate(graph, mate)
    logger.debug("maximum matching of size %d on n=%d", len(matching), graph.n)
    return matching


def matching_number(graph: Graph) -> int:
    """mu(G)."""
    return len(maximum_matching(graph))


# ----------------------------------------------------------------------------
# Exhaustive enumeration
# ----------------------------------------------------------------------------

def enumerate_maximum_matchings(graph: Graph, caps: Caps = DEFAULT_CAPS,
                                mu: Optional[int] = None) -> List[Matching]:
    """
    Every maximum matching, in canonical order of their sorted edge lists.

    Branches on the lowest undecided vertex: leave it unsaturated while the
    budget of n - 2*mu unsaturated vertices allows, or match it to a higher
    undecided neighbor.

    Raises:
        CapExceeded: more than ``caps.matchings`` matchings exist; ``partial``
            holds the first ``caps.matchings`` found.
    """
    if mu is None:
        mu = matching_number(graph)
    n = graph.n
    adjacency = [graph.neighbors(v) for v in range(n)]
    decided = [False] * n
    chosen: List[Edge] = []
    found: List[FrozenSet[Edge]] = []

    def recurse(v: int, skips_left: int) -> None:
        while v < n and decided[v]:
            v += 1
        if v == n:
            if len(found) >= caps.matchings:
                raise CapExceeded('matchings', caps.matchings,
                                  [Matching(graph, m) for m in sorted(found, key=sorted)])
            found.append(frozenset(chosen))
            return
        decided[v] = True
        if skips_left > 0:
            recurse(v + 1, skips_left - 1)
        for w in adjacency[v]:
            if not decided[w]:
                decided[w] = True
                chosen.append((v, w))
                recurse(v + 1, skips_left)
                chosen.pop()
                decided[w] = False
        decided[v] = False

    recurse(0, n - 2 * mu)
    return [Matching(graph, m) for m in sorted(found, key=sorted)]


# ----------------------------------------------------------------------------
# Alternating walks
# ----------------------------------------------------------------------------

def classify_walk(graph: Graph, matching: Matching, walk: Sequence[int]) -> AlternatingWalk:
    """
    Classify an M-alternating walk as mm, nn, mn or nm.

    Raises:
        WalkRejected: a step is not an edge, or two consecutive steps agree
            on membership in M. ``index`` is the position of the bad step.
    """
    if len(walk) < 2:
        raise WalkRejected("a walk needs at least two vertices", 0)
    flags = []
    for i in range(len(walk) - 1):
        u, v = walk[i], walk[i + 1]
        if not graph.has_edge(u, v):
            raise WalkRejected(f"{u} and {v} are not adjacent", i)
        flag = matching.contains(u, v)
        if flags and flags[-1] == flag:
            raise WalkRejected("consecutive edges agree on matching membership", i)
        flags.append(flag)
    first = 'm' if flags[0] else 'n'
    last = 'm' if flags[-1] else 'n'
    return AlternatingWalk(tuple(walk), tuple(flags), WalkClass(first + last))


def verify_matching(graph: Graph, edges: Iterable[Tuple[int, int]]) -> Tuple[bool, str]:
    """Whether ``edges`` is a matching of ``graph``, with the reason if not."""
    covered = {}
    for u, v in edges:
        if not graph.has_edge(u, v):
            return False, f"({u}, {v}) is not an edge"
        for x in (u, v):
            if x in covered:
                return False, f"vertex {x} is covered by ({covered[x][0]}, {covered[x][1]}) and ({u}, {v})"
            covered[x] = (u, v)
    return True, "ok"


def find_mn_path(graph: Graph, matching: Matching, x: int) -> Optional[List[int]]:
    """
    An alternating path from saturated ``x``, starting with the matched edge at
    ``x`` and ending at an unsaturated vertex; None when there is none.

    Exhaustive over simple paths, intended for small graphs.
    """
    if not matching.is_saturated(x):
        raise DomainError(f"vertex {x} is unsaturated")
    path = [x]
    on_path = {x}

    def extend(v: int) -> bool:
        # v is reached by a non-matching edge (or is x); leave by its matched edge
        w = matching.partner(v)
        if w in on_path:
            return False
        path.append(w)
        on_path.add(w)
        for y in graph.neighbors(w):
            if y in on_path or matching.contains(w, y):
                continue
            path.append(y)
            on_path.add(y)
            if not matching.is_saturated(y) or extend(y):
                return True
            path.pop()
            on_path.discard(y)
        path.pop()
        on_path.discard(w)
        return False

    return path if extend(x) else None


def is_factor_critical(graph: Graph) -> bool:
    """Every vertex-deleted subgraph has a perfect matching."""
    if graph.n % 2 == 0:
        return False
    target = (graph.n - 1) // 2
    return all(matching_number(graph.without_vertex(v)) == target for v in range(graph.n))


class MatchingAnalyzer:
    """Bundles the matching operations behind a config, for reports."""

    def __init__(self, config=None, caps: Optional[Caps] = None):
        self.config = config or {}
        self.caps = caps or Caps.from_config(self.config)
        self.logger = logging.getLogger(__name__)

    def summarize(self, graph: Graph) -> dict:
        matching = maximum_matching(graph)
        summary = {
            'mu': len(matching),
            'matching': [list(e) for e in matching.sorted_edges()],
            'unsaturated': matching.unsaturated(),
        }
        try:
            summary['maximum_matching_count'] = len(enumerate_maximum_matchings(graph, self.caps, len(matching)))
        except CapExceeded as e:
            self.logger.warning(f"⚠️ matching enumeration stopped: {e}")
            summary['maximum_matching_count'] = None
        return summary
