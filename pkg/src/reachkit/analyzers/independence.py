"""
Independent sets: alpha, maximum independent sets, core and corona, the
critical difference and ker.

Sets are handled as bitmasks internally; everything returned is a sorted
vertex tuple.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from ..caps import Caps, DEFAULT_CAPS
from ..exceptions import CapExceeded, TheoremViolation
from ..graphs.graph import Graph, VertexSet, vertex_set

logger = logging.getLogger(__name__)


def _masks(graph: Graph) -> List[int]:
    masks = []
    for v in range(graph.n):
        mask = 0
        for w in graph.adjacency[v]:
            mask |= 1 << w
        masks.append(mask)
    return masks


def _members(mask: int) -> VertexSet:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _check_limit(graph: Graph, caps: Caps) -> None:
    if graph.n > caps.mis_vertex_limit:
        raise CapExceeded('mis_vertex_limit', caps.mis_vertex_limit)


def _greedy_size(nbr: List[int], n: int) -> int:
    """Minimum-degree greedy independent set size; a lower bound for alpha."""
    remaining = (1 << n) - 1
    size = 0
    while remaining:
        v = min(_members(remaining), key=lambda x: bin(nbr[x] & remaining).count('1'))
        remaining &= ~(nbr[v] | (1 << v))
        size += 1
    return size


def independence_number(graph: Graph, caps: Caps = DEFAULT_CAPS) -> int:
    """
    alpha(G) by branch and bound on the highest-degree candidate.

    Raises:
        CapExceeded: n is above ``caps.mis_vertex_limit``.
    """
    _check_limit(graph, caps)
    nbr = _masks(graph)
    best = _greedy_size(nbr, graph.n)

    def search(candidates: int, size: int) -> None:
        nonlocal best
        # vertices with no candidate neighbor always join
        while candidates:
            free = [v for v in _members(candidates) if not nbr[v] & candidates]
            if not free:
                break
            for v in free:
                candidates &= ~(1 << v)
            size += len(free)
        if size + bin(candidates).count('1') <= best:
            best = max(best, size)
            return
        if not candidates:
            best = max(best, size)
            return
        v = max(_members(candidates), key=lambda x: (bin(nbr[x] & candidates).count('1'), -x))
        search(candidates & ~(nbr[v] | (1 << v)), size + 1)
        search(candidates & ~(1 << v), size)

    search((1 << graph.n) - 1, 0)
    return best


def enumerate_mis(graph: Graph, caps: Caps = DEFAULT_CAPS) -> List[VertexSet]:
    """
    Every maximum independent set, in lexicographic order.

    Raises:
        CapExceeded: n is above ``caps.mis_vertex_limit``, or there are more
            than ``caps.independent_sets`` maximum independent sets.
    """
    alpha = independence_number(graph, caps)
    nbr = _masks(graph)
    found: List[VertexSet] = []

    def search(candidates: int, chosen: int, size: int) -> None:
        if size + bin(candidates).count('1') < alpha:
            return
        # a vertex with no candidate neighbor belongs to every maximum extension
        free = 0
        for v in _members(candidates):
            if not nbr[v] & candidates:
                free |= 1 << v
        if free:
            search(candidates & ~free, chosen | free, size + bin(free).count('1'))
            return
        if not candidates:
            if len(found) >= caps.independent_sets:
                raise CapExceeded('maximum_independent_sets', caps.independent_sets, sorted(found))
            found.append(_members(chosen))
            return
        v = max(_members(candidates), key=lambda x: (bin(nbr[x] & candidates).count('1'), -x))
        search(candidates & ~(nbr[v] | (1 << v)), chosen | (1 << v), size + 1)
        search(candidates & ~(1 << v), chosen, size)

    search((1 << graph.n) - 1, 0, 0)
    return sorted(found)


def core_corona(graph: Graph, caps: Caps = DEFAULT_CAPS,
                mis: Optional[List[VertexSet]] = None) -> Tuple[VertexSet, VertexSet]:
    """Intersection and union of all maximum independent sets."""
    if mis is None:
        mis = enumerate_mis(graph, caps)
    core = set(mis[0])
    corona = set()
    for s in mis:
        core &= set(s)
        corona |= set(s)
    return vertex_set(core), vertex_set(corona)


def difference(graph: Graph, vertices: Iterable[int]) -> int:
    """d_G(X) = |X| - |N(X)|."""
    members = vertex_set(vertices)
    return len(members) - len(graph.neighborhood(members))


def enumerate_independent_sets(graph: Graph, caps: Caps = DEFAULT_CAPS) -> List[Tuple[int, int]]:
    """Every independent set as (mask, |N(mask)|), the empty set included."""
    _check_limit(graph, caps)
    nbr = _masks(graph)
    out: List[Tuple[int, int]] = []

    def search(start: int, chosen: int, blocked: int, neighborhood: int) -> None:
        if len(out) >= caps.independent_sets:
            raise CapExceeded('independent_sets', caps.independent_sets)
        out.append((chosen, bin(neighborhood).count('1')))
        for v in range(start, graph.n):
            if not blocked >> v & 1:
                search(v + 1, chosen | (1 << v), blocked | nbr[v] | (1 << v), neighborhood | nbr[v])

    search(0, 0, 0, 0)
    return out


def critical_difference(graph: Graph, caps: Caps = DEFAULT_CAPS) -> Tuple[int, List[VertexSet]]:
    """
    d(G) as the maximum difference over independent sets, with every
    independent set attaining it, ordered by size then lexicographically.
    """
    sets = enumerate_independent_sets(graph, caps)
    d = max(bin(mask).count('1') - size for mask, size in sets)
    witnesses = [_members(mask) for mask, size in sets if bin(mask).count('1') - size == d]
    return d, sorted(witnesses, key=lambda s: (len(s), s))


def ker_set(graph: Graph, caps: Caps = DEFAULT_CAPS,
            witnesses: Optional[List[VertexSet]] = None) -> VertexSet:
    """Intersection of all critical independent sets."""
    if witnesses is None:
        witnesses = critical_difference(graph, caps)[1]
    common = set(witnesses[0])
    for s in witnesses[1:]:
        common &= set(s)
    return vertex_set(common)


def is_critical(graph: Graph, vertices: Iterable[int], caps: Caps = DEFAULT_CAPS,
                d: Optional[int] = None) -> bool:
    """Whether X is a critical independent set."""
    members = vertex_set(vertices)
    if not graph.is_independent(members):
        return False
    if d is None:
        d = critical_difference(graph, caps)[0]
    return difference(graph, members) == d


def critical_in_D(graph: Graph, D: Iterable[int], caps: Caps = DEFAULT_CAPS,
                  witnesses: Optional[List[VertexSet]] = None) -> VertexSet:
    """
    A critical independent set inside D(G); the first in witness order.

    Raises:
        TheoremViolation: no critical independent set lies inside D(G).
    """
    if witnesses is None:
        witnesses = critical_difference(graph, caps)[1]
    inside = set(D)
    for s in witnesses:
        if inside.issuperset(s):
            return s
    raise TheoremViolation('critical_in_D', {'D': sorted(inside), 'critical_sets': [list(s) for s in witnesses]})


def mis_in_D(graph: Graph, part: Iterable[int], D: Iterable[int],
             caps: Caps = DEFAULT_CAPS) -> Optional[VertexSet]:
    """Some S in Omega(G[part]) with S inside D(G), in original labels; None if there is none."""
    sub, index = graph.induced_subgraph(part)
    back = {new: old for old, new in index.items()}
    inside = set(D)
    for s in enumerate_mis(sub, caps):
        original = vertex_set(back[v] for v in s)
        if inside.issuperset(original):
            return original
    return None


@dataclass(frozen=True)
class IndependenceProfile:
    alpha: int
    tau: int
    core: VertexSet
    corona: VertexSet
    ker: VertexSet
    d: int
    mis_count: int
    critical_sets_count: int
    mis: Tuple[VertexSet, ...] = field(default=(), repr=False, compare=False)
    critical_sets: Tuple[VertexSet, ...] = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            'alpha': self.alpha,
            'tau': self.tau,
            'core': list(self.core),
            'corona': list(self.corona),
            'ker': list(self.ker),
            'd': self.d,
            'mis_count': self.mis_count,
            'critical_sets_count': self.critical_sets_count,
        }


def independence_profile(graph: Graph, caps: Caps = DEFAULT_CAPS) -> IndependenceProfile:
    mis = enumerate_mis(graph, caps)
    core, corona = core_corona(graph, caps, mis)
    d, witnesses = critical_difference(graph, caps)
    alpha = len(mis[0])
    return IndependenceProfile(
        alpha=alpha,
        tau=graph.n - alpha,
        core=core,
        corona=corona,
        ker=ker_set(graph, caps, witnesses),
        d=d,
        mis_count=len(mis),
        critical_sets_count=len(witnesses),
        mis=tuple(mis),
        critical_sets=tuple(witnesses),
    )
