"""
Reach sets of odd cycles, R-disjointness and the flower decomposition.

R(C) is the union of the vertex sets of all M-flowers with blossom C, over
all maximum matchings M. The oracle enumerates exactly that. The fast path
reads R(C) off the Gallai-Edmonds structure: with every component of G[D]
seen as a single node, the maximum matchings of G cover exactly the bases of
the transversal matroid that A induces on those components, and C reaches
precisely the components in its connected class of that matroid, together
with the vertices of A adjacent to them. The class is computed from the
fundamental circuits of one basis, i.e. from one maximum matching.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ..caps import Caps, DEFAULT_CAPS
from ..exceptions import CapExceeded, InternalInconsistency, PreconditionError, TheoremViolation
from ..graphs.graph import Graph, VertexSet, vertex_set
from .matching import Matching, enumerate_maximum_matchings, matching_number
from .structure import (
    GEDecomposition,
    OddCycle,
    d_components,
    enumerate_odd_cycles,
    find_flowers,
    gallai_edmonds,
    is_konig_egervary,
    is_odd_cycle_disjoint,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReachSet:
    """
    R(C) with its parity classes.

    ``odd`` and ``even`` hold the stem vertices by the parity of their
    distance to the base along the stem. ``conflicts`` lists vertices seen at
    both parities; they are kept in ``odd``.
    """

    cycle: OddCycle
    vertices: VertexSet = ()
    odd: VertexSet = ()
    even: VertexSet = ()
    conflicts: VertexSet = ()
    method: str = field(default='fast', compare=False)

    @property
    def empty(self) -> bool:
        return not self.vertices

    def to_dict(self) -> dict:
        return {
            'cycle': self.cycle.to_list(),
            'R': list(self.vertices),
            'R_odd': list(self.odd),
            'R_even': list(self.even),
            'parity_conflicts': list(self.conflicts),
        }


def reach_set_oracle(graph: Graph, cycle: OddCycle, caps: Caps = DEFAULT_CAPS) -> ReachSet:
    """
    Exact R(C) by enumerating every maximum matching and every flower.

    Raises:
        CapExceeded: matching or flower enumeration hit its cap.
    """
    members = set()
    odd, even = set(), set()
    for matching in enumerate_maximum_matchings(graph, caps):
        for flower in find_flowers(graph, matching, cycle, caps):
            members.update(flower.vertex_set)
            for index, x in enumerate(flower.stem[1:], start=1):
                (odd if index % 2 else even).add(x)
    conflicts = odd & even
    if conflicts:
        logger.warning(f"⚠️ stem parity differs across flowers at {sorted(conflicts)} for cycle {cycle.to_list()}")
    return ReachSet(
        cycle,
        vertex_set(members),
        vertex_set(odd),
        vertex_set(even - odd),
        vertex_set(conflicts),
        method='oracle',
    )


def _bipartite_matching(left: Sequence[int], right_of: Dict[int, List[int]]) -> Dict[int, int]:
    """Kuhn's augmenting paths; returns component -> matched A vertex."""
    owner: Dict[int, int] = {}

    def try_assign(a: int, visited: set) -> bool:
        for comp in right_of[a]:
            if comp in visited:
                continue
            visited.add(comp)
            if comp not in owner or try_assign(owner[comp], visited):
                owner[comp] = a
                return True
        return False

    for a in left:
        try_assign(a, set())
    return owner


def _component_classes(graph: Graph, ge: GEDecomposition,
                       components: List[VertexSet]) -> Tuple[List[int], Dict[int, List[int]], Dict[int, int]]:
    """Union-find classes of the components under shared fundamental circuits."""
    where = {v: i for i, comp in enumerate(components) for v in comp}
    comps_of: Dict[int, List[int]] = {
        a: sorted({where[w] for w in graph.adjacency[a] if w in where}) for a in ge.A
    }
    owner = _bipartite_matching(ge.A, comps_of)
    if len(owner) != len(ge.A):
        raise InternalInconsistency(f"A = {list(ge.A)} cannot be matched into distinct components of G[D]")
    mate_of_a = {a: comp for comp, a in owner.items()}

    parent = list(range(len(components)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    comp_neighbors: Dict[int, List[int]] = {i: [] for i in range(len(components))}
    for a, comps in comps_of.items():
        for comp in comps:
            comp_neighbors[comp].append(a)

    for start in range(len(components)):
        if start in owner:
            continue
        reached = {start}
        queue = deque([start])
        while queue:
            comp = queue.popleft()
            for a in comp_neighbors[comp]:
                if owner.get(comp) == a:
                    continue
                covered = mate_of_a[a]
                if covered not in reached:
                    reached.add(covered)
                    queue.append(covered)
                    parent[find(covered)] = find(start)
    return parent, comp_neighbors, owner


def reach_set(graph: Graph, cycle: OddCycle, caps: Caps = DEFAULT_CAPS,
              ge: Optional[GEDecomposition] = None) -> ReachSet:
    """
    R(C) computed from the Gallai-Edmonds structure and one maximum matching.

    Returns an empty reach set when V(C) is not inside D(G). Falls back to
    the oracle when V(C) is inside D(G) but is not a whole component of G[D]
    inducing just the cycle, and when another component of G[D] with more
    than one vertex lies in the same class. Otherwise the stems alternate
    between A(G) and singleton components, so the parity classes are exact.
    """
    if ge is None:
        ge = gallai_edmonds(graph)
    d_set = set(ge.D)
    if not d_set.issuperset(cycle.vertices):
        return ReachSet(cycle)

    components = d_components(graph, ge)
    own = next(i for i, comp in enumerate(components) if cycle.vertices[0] in comp)
    if components[own] != cycle.vertex_set or not cycle.chordless:
        logger.debug("cycle %s is not a whole component of G[D]; using the oracle", cycle.to_list())
        return reach_set_oracle(graph, cycle, caps)

    parent, comp_neighbors, _ = _component_classes(graph, ge, components)

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    root = find(own)
    in_class = [i for i in range(len(components)) if find(i) == root]
    if any(i != own and len(components[i]) > 1 for i in in_class):
        # stems may cross a factor-critical component at either parity
        logger.debug("cycle %s shares its class with another odd component; using the oracle", cycle.to_list())
        return reach_set_oracle(graph, cycle, caps)
    members = set(cycle.vertices)
    a_side = set()
    for i in in_class:
        members.update(components[i])
        a_side.update(comp_neighbors[i])
    members |= a_side
    return ReachSet(
        cycle,
        vertex_set(members),
        vertex_set(a_side),
        vertex_set(members - a_side - set(cycle.vertices)),
    )


# ----------------------------------------------------------------------------
# R-disjointness
# ----------------------------------------------------------------------------

class VerdictKind(Enum):
    R_DISJOINT = "r_disjoint"
    EMPTY_REACH = "empty_reach"
    OVERLAPPING_REACH = "overlapping_reach"
    NO_ODD_CYCLE = "no_odd_cycle"


@dataclass(frozen=True)
class RDisjointVerdict:
    kind: VerdictKind
    cycles: Tuple[OddCycle, ...] = ()
    reach_sets: Tuple[ReachSet, ...] = ()
    witness: Tuple[OddCycle, ...] = ()

    @property
    def is_r_disjoint(self) -> bool:
        return self.kind is VerdictKind.R_DISJOINT

    def to_dict(self) -> dict:
        return {
            'verdict': self.kind.value,
            'odd_cycles': [c.to_list() for c in self.cycles],
            'witness': [c.to_list() for c in self.witness],
            'reach_sets': [r.to_dict() for r in self.reach_sets],
        }


def is_r_disjoint(graph: Graph, caps: Caps = DEFAULT_CAPS) -> RDisjointVerdict:
    """
    Whether every odd cycle has a nonempty reach set and reach sets of
    distinct odd cycles are disjoint.
    """
    disjointness = is_odd_cycle_disjoint(graph, caps)
    cycles = disjointness.cycles
    if not cycles:
        return RDisjointVerdict(VerdictKind.NO_ODD_CYCLE)

    ge = gallai_edmonds(graph)
    if not disjointness.disjoint:
        first, second = disjointness.pair
        reaches = tuple(reach_set(graph, c, caps, ge) for c in (first, second))
        for reach in reaches:
            if reach.empty:
                return RDisjointVerdict(VerdictKind.EMPTY_REACH, cycles, reaches, (reach.cycle,))
        return RDisjointVerdict(VerdictKind.OVERLAPPING_REACH, cycles, reaches, (first, second))

    reaches = []
    for cycle in cycles:
        reach = reach_set(graph, cycle, caps, ge)
        if reach.empty:
            return RDisjointVerdict(VerdictKind.EMPTY_REACH, cycles, tuple(reaches) + (reach,), (cycle,))
        reaches.append(reach)
    for i, first in enumerate(reaches):
        for second in reaches[i + 1:]:
            if set(first.vertices) & set(second.vertices):
                return RDisjointVerdict(VerdictKind.OVERLAPPING_REACH, cycles, tuple(reaches),
                                        (first.cycle, second.cycle))
    return RDisjointVerdict(VerdictKind.R_DISJOINT, cycles, tuple(reaches))


# ----------------------------------------------------------------------------
# Flower decomposition
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowerDecomposition:
    """The partition of V(G) into the reach sets and the leftover block B."""

    parts: Tuple[ReachSet, ...]
    B: VertexSet

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def cycles(self) -> Tuple[OddCycle, ...]:
        return tuple(p.cycle for p in self.parts)

    def part_sets(self) -> List[VertexSet]:
        """Every R(C) in cycle order, then B."""
        return [p.vertices for p in self.parts] + [self.B]

    def part_index(self, v: int) -> int:
        for i, part in enumerate(self.part_sets()):
            if v in part:
                return i
        raise InternalInconsistency(f"vertex {v} lies in no part")

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'parts': [p.to_dict() for p in self.parts],
            'B': list(self.B),
        }


def _is_almost_bipartite_non_ke(graph: Graph, vertices: VertexSet, caps: Caps) -> Tuple[bool, dict]:
    sub, _ = graph.induced_subgraph(vertices)
    cycles = enumerate_odd_cycles(sub, caps)
    ke = is_konig_egervary(sub, caps)
    ok = len(cycles) == 1 and not ke.is_konig_egervary
    return ok, {'vertices': list(vertices), 'odd_cycles': len(cycles), 'konig_egervary': ke.is_konig_egervary}


def validate_decomposition(graph: Graph, decomposition: FlowerDecomposition,
                           caps: Caps = DEFAULT_CAPS) -> None:
    """
    Check that the parts partition V(G), that G[B] is bipartite, that every
    part has consistent stem parities, that each G[R(C)] has C as its only
    odd cycle and is not König-Egerváry, and that each G[R(C) + B] is almost
    bipartite and not König-Egerváry.

    Raises:
        TheoremViolation: naming the failed statement with the offending sets.
    """
    seen: Dict[int, int] = {}
    for i, part in enumerate(decomposition.part_sets()):
        for v in part:
            if v in seen:
                raise TheoremViolation('partition', {'vertex': v, 'parts': [seen[v], i]})
            seen[v] = i
    if len(seen) != graph.n:
        raise TheoremViolation('partition', {'missing': sorted(set(graph.vertices) - set(seen))})

    block, _ = graph.induced_subgraph(decomposition.B)
    if not block.is_bipartite():
        raise TheoremViolation('bipartite_block', {'B': list(decomposition.B)})

    for part in decomposition.parts:
        if part.conflicts:
            raise TheoremViolation('parity_consistency', {
                'cycle': part.cycle.to_list(), 'conflicts': list(part.conflicts),
            })
        sub, index = graph.induced_subgraph(part.vertices)
        cycles = enumerate_odd_cycles(sub, caps)
        expected = part.cycle.relabel(sub, index)
        if [c.vertices for c in cycles] != [expected.vertices]:
            raise TheoremViolation('unique_odd_cycle', {
                'R': list(part.vertices), 'cycle': part.cycle.to_list(), 'odd_cycles_found': len(cycles),
            })
        if is_konig_egervary(sub, caps).is_konig_egervary:
            raise TheoremViolation('part_non_konig_egervary', {'R': list(part.vertices)})
        ok, details = _is_almost_bipartite_non_ke(graph, vertex_set(part.vertices + decomposition.B), caps)
        if not ok:
            raise TheoremViolation('part_with_block_non_konig_egervary', details)


def flower_decomposition(graph: Graph, caps: Caps = DEFAULT_CAPS,
                         verdict: Optional[RDisjointVerdict] = None) -> FlowerDecomposition:
    """
    The flower decomposition of an R-disjoint graph, validated before return.

    Raises:
        PreconditionError: the graph is not R-disjoint (carries the verdict).
        TheoremViolation: validation failed.
    """
    if verdict is None:
        verdict = is_r_disjoint(graph, caps)
    if not verdict.is_r_disjoint:
        raise PreconditionError(f"graph is not R-disjoint ({verdict.kind.value})", verdict)
    covered = set()
    for reach in verdict.reach_sets:
        covered.update(reach.vertices)
    decomposition = FlowerDecomposition(
        verdict.reach_sets,
        vertex_set(v for v in graph.vertices if v not in covered),
    )
    validate_decomposition(graph, decomposition, caps)
    logger.debug("flower decomposition with k=%d, |B|=%d", decomposition.k, len(decomposition.B))
    return decomposition


def restriction_is_maximum(graph: Graph, decomposition: FlowerDecomposition,
                           matching: Matching) -> bool:
    """Whether the restriction of M to every part is a maximum matching of that part."""
    for part in decomposition.part_sets():
        sub, _ = graph.induced_subgraph(part)
        if len(matching.restrict(part)) != matching_number(sub):
            return False
    return True


def crossing_matched_edges(decomposition: FlowerDecomposition, matching: Matching) -> List[Tuple[int, int]]:
    """Matched edges whose endpoints lie in different parts."""
    return [
        (u, v) for u, v in matching.sorted_edges()
        if decomposition.part_index(u) != decomposition.part_index(v)
    ]
