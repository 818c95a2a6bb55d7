"""
Matching structure: Gallai-Edmonds partition, odd cycles, flowers, posies and
the König-Egerváry test.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from ..caps import Caps, DEFAULT_CAPS
from ..exceptions import CapExceeded, DomainError, InternalInconsistency
from ..graphs.graph import Edge, Graph, VertexSet, normalize_edge, vertex_set
from .matching import UNMATCHED, Matching, enumerate_maximum_matchings, matching_number, maximum_matching

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------------
# Gallai-Edmonds
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class GEDecomposition:
    """D: missed by some maximum matching; A = N(D) minus D; C: the rest."""

    D: VertexSet
    A: VertexSet
    C: VertexSet

    def part_of(self, v: int) -> str:
        if v in self.D:
            return 'D'
        return 'A' if v in self.A else 'C'

    def to_dict(self) -> Dict[str, List[int]]:
        return {'D': list(self.D), 'A': list(self.A), 'C': list(self.C)}


def _partition_from_D(graph: Graph, D: VertexSet) -> GEDecomposition:
    d_set = set(D)
    A = vertex_set(v for v in graph.neighborhood(D) if v not in d_set)
    rest = d_set | set(A)
    C = vertex_set(v for v in graph.vertices if v not in rest)
    return GEDecomposition(vertex_set(D), A, C)


def gallai_edmonds(graph: Graph) -> GEDecomposition:
    """Deletion test: v is in D exactly when mu(G - v) = mu(G)."""
    mu = matching_number(graph)
    D = [v for v in graph.vertices if matching_number(graph.without_vertex(v)) == mu]
    return _partition_from_D(graph, vertex_set(D))


def gallai_edmonds_oracle(graph: Graph, caps: Caps = DEFAULT_CAPS) -> GEDecomposition:
    """D as the union of unsaturated vertices over every maximum matching."""
    missed = set()
    for matching in enumerate_maximum_matchings(graph, caps):
        missed.update(matching.unsaturated())
    return _partition_from_D(graph, vertex_set(missed))


def d_components(graph: Graph, ge: GEDecomposition) -> List[VertexSet]:
    """Connected components of G[D]."""
    return graph.connected_components(ge.D)


# ----------------------------------------------------------------------------
# Odd cycles
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class OddCycle:
    """
    A cycle of odd length in canonical form: it starts at its smallest vertex
    and continues toward the smaller of that vertex's two cycle neighbors.
    """

    vertices: Tuple[int, ...]
    chordless: bool = field(default=True, compare=False)

    @classmethod
    def canonical(cls, graph: Graph, sequence: Sequence[int]) -> "OddCycle":
        seq = list(sequence)
        if len(seq) < 3 or len(seq) % 2 == 0 or len(set(seq)) != len(seq):
            raise DomainError(f"{seq} is not an odd cycle")
        for i, v in enumerate(seq):
            if not graph.has_edge(v, seq[(i + 1) % len(seq)]):
                raise DomainError(f"{seq} is not a cycle of the graph")
        start = seq.index(min(seq))
        rotated = seq[start:] + seq[:start]
        if rotated[-1] < rotated[1]:
            rotated = [rotated[0]] + rotated[1:][::-1]
        induced_edges = sum(1 for u, v in graph.edges if u in set(rotated) and v in set(rotated))
        return cls(tuple(rotated), chordless=induced_edges == len(rotated))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def k(self) -> int:
        """floor(|V(C)| / 2)."""
        return len(self.vertices) // 2

    @property
    def vertex_set(self) -> VertexSet:
        return vertex_set(self.vertices)

    @property
    def edges(self) -> FrozenSet[Edge]:
        size = len(self.vertices)
        return frozenset(
            normalize_edge(self.vertices[i], self.vertices[(i + 1) % size]) for i in range(size)
        )

    def relabel(self, graph: Graph, mapping: Dict[int, int]) -> "OddCycle":
        return OddCycle.canonical(graph, [mapping[v] for v in self.vertices])

    def to_list(self) -> List[int]:
        return list(self.vertices)


def enumerate_odd_cycles(graph: Graph, caps: Caps = DEFAULT_CAPS) -> List[OddCycle]:
    """
    Every odd cycle of the graph, ordered by vertex set.

    Raises:
        CapExceeded: the graph is larger than ``caps.odd_cycle_vertex_limit``
            or has more than ``caps.odd_cycles`` odd cycles.
    """
    if graph.n > caps.odd_cycle_vertex_limit:
        raise CapExceeded('odd_cycle_vertices', caps.odd_cycle_vertex_limit)
    found: Dict[Tuple[int, ...], OddCycle] = {}
    for sequence in nx.simple_cycles(graph.to_networkx()):
        if len(sequence) % 2 == 0:
            continue
        cycle = OddCycle.canonical(graph, sequence)
        if cycle.vertices in found:
            continue
        if len(found) >= caps.odd_cycles:
            raise CapExceeded('odd_cycles', caps.odd_cycles, _ordered(found.values()))
        found[cycle.vertices] = cycle
    return _ordered(found.values())


def _ordered(cycles) -> List[OddCycle]:
    return sorted(cycles, key=lambda c: (c.vertex_set, c.vertices))


@dataclass(frozen=True)
class OddCycleDisjointness:
    disjoint: bool
    cycles: Tuple[OddCycle, ...]
    pair: Optional[Tuple[OddCycle, OddCycle]] = None


def is_odd_cycle_disjoint(graph: Graph, caps: Caps = DEFAULT_CAPS,
                          check_components: bool = True) -> OddCycleDisjointness:
    """
    Whether the odd cycles are pairwise vertex-disjoint.

    When they are, every nontrivial component of G[D] must be one of the odd
    cycles, taken without chords; a mismatch raises InternalInconsistency.
    """
    cycles = enumerate_odd_cycles(graph, caps)
    for i, first in enumerate(cycles):
        first_set = set(first.vertices)
        for second in cycles[i + 1:]:
            if first_set.intersection(second.vertices):
                return OddCycleDisjointness(False, tuple(cycles), (first, second))

    if check_components and cycles:
        cycle_sets = {c.vertex_set: c for c in cycles}
        for component in d_components(graph, gallai_edmonds(graph)):
            if len(component) == 1:
                continue
            cycle = cycle_sets.get(component)
            if cycle is None or not cycle.chordless:
                raise InternalInconsistency(
                    f"odd cycles are disjoint but G[D] has component {list(component)} "
                    f"that is neither a vertex nor a chordless odd cycle"
                )
    return OddCycleDisjointness(True, tuple(cycles))


# ----------------------------------------------------------------------------
# Flowers and posies
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Flower:
    """An M-blossom joined at its base to an even alternating stem."""

    matching: Matching = field(repr=False, compare=False)
    blossom: OddCycle
    stem: Tuple[int, ...]

    @property
    def base(self) -> int:
        return self.stem[0]

    @property
    def root(self) -> int:
        return self.stem[-1]

    @property
    def vertex_set(self) -> VertexSet:
        return vertex_set(self.blossom.vertices + self.stem)

    def stem_index(self, x: int) -> Optional[int]:
        """d_F(x, c): position of x on the stem counted from the base."""
        try:
            return self.stem.index(x)
        except ValueError:
            return None

    def to_dict(self) -> dict:
        return {
            'type': 'flower',
            'matching': [list(e) for e in self.matching.sorted_edges()],
            'blossom': self.blossom.to_list(),
            'stem': list(self.stem),
            'base': self.base,
            'root': self.root,
        }


@dataclass(frozen=True)
class Posy:
    """Two M-blossoms whose bases are joined by an alternating walk that starts and ends with matched edges."""

    matching: Matching = field(repr=False, compare=False)
    first: OddCycle
    second: OddCycle
    path: Tuple[int, ...]

    @property
    def bases(self) -> Tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def disjoint_blossoms(self) -> bool:
        return not set(self.first.vertices) & set(self.second.vertices)

    @property
    def simple_path(self) -> bool:
        return len(set(self.path)) == len(self.path)

    @property
    def is_classical(self) -> bool:
        """Disjoint blossoms, a simple path, and no inner path vertex on a blossom."""
        blossoms = set(self.first.vertices) | set(self.second.vertices)
        return (self.disjoint_blossoms and self.simple_path
                and not blossoms.intersection(self.path[1:-1]))

    def to_dict(self) -> dict:
        return {
            'type': 'posy',
            'matching': [list(e) for e in self.matching.sorted_edges()],
            'blossoms': [self.first.to_list(), self.second.to_list()],
            'bases': list(self.bases),
            'path': list(self.path),
            'disjoint_blossoms': self.disjoint_blossoms,
            'simple_path': self.simple_path,
        }


def blossom_base(matching: Matching, cycle: OddCycle) -> Optional[int]:
    """The base of ``cycle`` as an M-blossom, or None when it is not one."""
    inside = [e for e in cycle.edges if e in matching.edges]
    if len(inside) != cycle.k:
        return None
    covered = {v for e in inside for v in e}
    return next(v for v in cycle.vertices if v not in covered)


def find_flowers(graph: Graph, matching: Matching, cycle: OddCycle,
                 caps: Caps = DEFAULT_CAPS) -> List[Flower]:
    """
    All M-flowers whose blossom is ``cycle``.

    Stems are enumerated as simple alternating paths that leave the base by
    its matched edge and stop at the first unsaturated vertex.
    """
    base = blossom_base(matching, cycle)
    if base is None:
        return []
    if not matching.is_saturated(base):
        return [Flower(matching, cycle, (base,))]

    blocked = set(cycle.vertices)
    flowers: List[Flower] = []
    stem = [base]

    def extend(v: int) -> None:
        w = matching.partner(v)
        if w in blocked or w in stem:
            return
        stem.append(w)
        for y in graph.neighbors(w):
            if y in blocked or y in stem or matching.contains(w, y):
                continue
            stem.append(y)
            if matching.is_saturated(y):
                extend(y)
            else:
                if len(flowers) >= caps.flowers:
                    raise CapExceeded('flowers', caps.flowers, list(flowers))
                flowers.append(Flower(matching, cycle, tuple(stem)))
            stem.pop()
        stem.pop()

    extend(base)
    return flowers


EVEN, ODD = 0, 1


class _ReachedUnsaturated(Exception):
    """A search started at a saturated vertex forced an unsaturated one into the cover."""


class _ForcingSearch:
    """
    Alternating breadth-first labeling from a set of even starting vertices.

    Reading "even" as "outside a vertex cover of size |M|" and "odd" as
    "inside it", the labels are the forced consequences of the start; an edge
    joining two even vertices is a contradiction and closes an M-blossom.
    The first label a vertex receives is kept.
    """

    def __init__(self, graph: Graph, matching: Matching):
        self.graph = graph
        self.matching = matching
        self.label: Dict[int, int] = {}
        self.parent: Dict[int, Optional[int]] = {}

    def from_unsaturated(self) -> Optional[Tuple[int, int]]:
        """Label everything the unsaturated vertices force; return the first contradiction."""
        queue = deque()
        for root in self.matching.unsaturated():
            self.label[root] = EVEN
            self.parent[root] = None
            queue.append(root)
        return self._run(queue, exhaustive=True)

    def from_saturated(self, u: int) -> Optional[Tuple[int, int]]:
        """Start from u even and its mate odd; stop at the first contradiction."""
        v = self.matching.mate[u]
        self.label[u], self.parent[u] = EVEN, None
        self.label[v], self.parent[v] = ODD, u
        return self._run(deque([u]), exhaustive=False)

    def _run(self, queue: deque, exhaustive: bool) -> Optional[Tuple[int, int]]:
        mate = self.matching.mate
        first = None
        while queue:
            x = queue.popleft()
            for w in self.graph.neighbors(x):
                if mate[x] == w:
                    continue
                seen = self.label.get(w)
                if seen is None:
                    y = mate[w]
                    if y == UNMATCHED:
                        raise _ReachedUnsaturated(w)
                    self.label[w], self.parent[w] = ODD, x
                    self.label[y], self.parent[y] = EVEN, w
                    queue.append(y)
                elif seen == EVEN and first is None:
                    first = (x, w)
                    if not exhaustive:
                        return first
        return first

    def _up(self, v: int) -> List[int]:
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path

    def blossom_and_stem(self, conflict: Tuple[int, int]) -> Tuple[OddCycle, Tuple[int, ...]]:
        """The blossom closed by an even-even edge and the tree path from its base up to the root."""
        x, w = conflict
        up_x, up_w = self._up(x), self._up(w)
        if up_x[-1] != up_w[-1]:
            raise InternalInconsistency(
                f"alternating trees of {up_x[-1]} and {up_w[-1]} are joined by ({x}, {w}): "
                f"the matching is not maximum"
            )
        on_w = {v: i for i, v in enumerate(up_w)}
        i = next(i for i, v in enumerate(up_x) if v in on_w)
        lca = up_x[i]
        sequence = up_x[:i + 1] + up_w[:on_w[lca]][::-1]
        return OddCycle.canonical(self.graph, sequence), tuple(up_x[i:])


def _flower_from_unsaturated(graph: Graph, matching: Matching) -> Tuple[Optional[Flower], _ForcingSearch]:
    search = _ForcingSearch(graph, matching)
    conflict = search.from_unsaturated()
    if conflict is None:
        return None, search
    blossom, stem = search.blossom_and_stem(conflict)
    return Flower(matching, blossom, stem), search


def _posy_candidates(graph: Graph, matching: Matching, labeled: Dict[int, int], strict: bool):
    # strict: the unsaturated vertices forced no contradiction, so a search from
    # an unforced edge can never reach an unsaturated vertex.
    for u, v in matching.sorted_edges():
        if u in labeled or v in labeled:
            continue
        first = _ForcingSearch(graph, matching)
        second = _ForcingSearch(graph, matching)
        try:
            conflict_u = first.from_saturated(u)
            if conflict_u is None:
                continue
            conflict_v = second.from_saturated(v)
            if conflict_v is None:
                continue
        except _ReachedUnsaturated as e:
            if strict:
                raise InternalInconsistency(f"forcing search from ({u}, {v}) reached unsaturated vertex {e}")
            continue
        blossom_u, stem_u = first.blossom_and_stem(conflict_u)
        blossom_v, stem_v = second.blossom_and_stem(conflict_v)
        yield Posy(matching, blossom_u, blossom_v, stem_u + stem_v[::-1])


def _search_posy(graph: Graph, matching: Matching, labeled: Dict[int, int],
                 strict: bool) -> Optional[Posy]:
    fallback = None
    for posy in _posy_candidates(graph, matching, labeled, strict):
        if posy.is_classical:
            return posy
        if fallback is None:
            fallback = posy
    return fallback


def find_posy(graph: Graph, matching: Matching) -> Optional[Posy]:
    """
    An M-posy among the matched edges the unsaturated vertices do not force,
    or None. Prefers a posy with disjoint blossoms and a simple path.
    """
    flower, search = _flower_from_unsaturated(graph, matching)
    return _search_posy(graph, matching, search.label, strict=flower is None)


@dataclass(frozen=True)
class KonigEgervaryResult:
    is_konig_egervary: bool
    matching: Matching = field(repr=False)
    flower: Optional[Flower] = None
    posy: Optional[Posy] = None
    alpha: Optional[int] = None

    @property
    def certificate(self) -> Optional[dict]:
        if self.flower is not None:
            return self.flower.to_dict()
        if self.posy is not None:
            return self.posy.to_dict()
        return None

    def to_dict(self) -> dict:
        return {
            'konig_egervary': self.is_konig_egervary,
            'mu': len(self.matching),
            'alpha': self.alpha,
            'certificate': self.certificate,
        }


def is_konig_egervary(graph: Graph, caps: Caps = DEFAULT_CAPS,
                      matching: Optional[Matching] = None) -> KonigEgervaryResult:
    """
    Decide alpha(G) + mu(G) = n from one maximum matching.

    The graph is König-Egerváry exactly when no flower and no posy exists for
    that matching. Up to ``caps.mis_vertex_limit`` vertices the verdict is also
    checked against alpha computed independently.

    Raises:
        InternalInconsistency: the certificate disagrees with alpha + mu = n.
    """
    from .independence import independence_number

    if matching is None:
        matching = maximum_matching(graph)
    flower, search = _flower_from_unsaturated(graph, matching)
    posy = None if flower is not None else _search_posy(graph, matching, search.label, strict=True)
    is_ke = flower is None and posy is None

    alpha = None
    if graph.n <= caps.mis_vertex_limit:
        alpha = independence_number(graph, caps)
        if (alpha + len(matching) == graph.n) != is_ke:
            raise InternalInconsistency(
                f"certificate verdict {is_ke} disagrees with alpha={alpha}, mu={len(matching)}, n={graph.n}"
            )
    logger.debug("KE verdict %s (flower=%s, posy=%s)", is_ke, flower is not None, posy is not None)
    return KonigEgervaryResult(is_ke, matching, flower, posy, alpha)
