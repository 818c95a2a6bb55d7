"""
Immutable simple undirected graphs on dense vertex labels 0..n-1.
"""

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

from ..exceptions import DomainError

Edge = Tuple[int, int]
VertexSet = Tuple[int, ...]


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Canonical form of a vertex collection: sorted, duplicate-free."""
    return tuple(sorted(set(vertices)))


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple graph. ``edges`` holds pairs (u, v) with u < v."""

    n: int
    edges: FrozenSet[Edge] = frozenset()
    adjacency: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"vertex count must be non-negative, got {self.n}")
        neighbors: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise DomainError(f"edge ({u}, {v}) is not a normalized pair below n={self.n}")
            neighbors[u].add(v)
            neighbors[v].add(u)
        object.__setattr__(self, 'edges', frozenset(self.edges))
        object.__setattr__(self, 'adjacency', tuple(frozenset(s) for s in neighbors))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph from arbitrary-orientation pairs, rejecting loops and repeats."""
        seen = set()
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            edge = normalize_edge(u, v)
            if edge in seen:
                raise DomainError(f"duplicate edge {edge}")
            seen.add(edge)
        return cls(n, frozenset(seen))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        nodes = sorted(graph.nodes())
        if nodes != list(range(len(nodes))):
            raise DomainError("networkx graph must use vertex labels 0..n-1")
        return cls.from_edges(len(nodes), graph.edges())

    @property
    def vertices(self) -> VertexSet:
        return tuple(range(self.n))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> List[int]:
        """Neighbors of ``v`` in ascending order."""
        return sorted(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def _check_vertices(self, vertices: Iterable[int]) -> VertexSet:
        canonical = vertex_set(vertices)
        for v in canonical:
            if not 0 <= v < self.n:
                raise DomainError(f"vertex {v} is outside 0..{self.n - 1}")
        return canonical

    def neighborhood(self, vertices: Iterable[int]) -> VertexSet:
        """N(X): every vertex adjacent to some member of X (may meet X)."""
        result = set()
        for v in self._check_vertices(vertices):
            result.update(self.adjacency[v])
        return vertex_set(result)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        members = self._check_vertices(vertices)
        chosen = set(members)
        return all(not (self.adjacency[v] & chosen) for v in members)

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        """G[X] relabeled 0..|X|-1 in ascending order, plus the old-to-new map."""
        members = self._check_vertices(vertices)
        index = {v: i for i, v in enumerate(members)}
        edges = frozenset(
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        )
        return Graph(len(members), edges), index

    def without_vertex(self, v: int) -> "Graph":
        """G - v, relabeled."""
        return self.induced_subgraph(u for u in range(self.n) if u != v)[0]

    def boundary(self, vertices: Iterable[int]) -> Tuple[List[Edge], VertexSet]:
        """Edges with exactly one endpoint in S, and the members of S they touch."""
        members = set(self._check_vertices(vertices))
        crossing = sorted(
            (u, v) for u, v in self.edges if (u in members) != (v in members)
        )
        touched = vertex_set(
            u if u in members else v for u, v in crossing
        )
        return crossing, touched

    def connected_components(self, vertices: Iterable[int] = None) -> List[VertexSet]:
        """Components of G[X] (all of G by default), ordered by smallest member."""
        allowed = set(self.vertices if vertices is None else self._check_vertices(vertices))
        seen = set()
        components = []
        for start in sorted(allowed):
            if start in seen:
                continue
            seen.add(start)
            queue = deque([start])
            component = []
            while queue:
                v = queue.popleft()
                component.append(v)
                for w in self.adjacency[v]:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        queue.append(w)
            components.append(vertex_set(component))
        return components

    def is_bipartite(self) -> bool:
        return nx.is_bipartite(self.to_networkx())

    def disjoint_union(self, other: "Graph") -> "Graph":
        """G followed by H, with H's vertices shifted by G.n."""
        shifted = frozenset((u + self.n, v + self.n) for u, v in other.edges)
        return Graph(self.n + other.n, self.edges | shifted)

    def relabel(self, permutation: List[int]) -> "Graph":
        """Image of G under v -> permutation[v]."""
        if sorted(permutation) != list(range(self.n)):
            raise DomainError("relabeling must be a permutation of 0..n-1")
        return Graph(self.n, frozenset(
            normalize_edge(permutation[u], permutation[v]) for u, v in self.edges
        ))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_edges())
        return graph


def fingerprint(graph: Graph) -> str:
    """SHA-256 of the graph6 encoding; stable across runs and platforms."""
    from .formats import serialize_graph

    return hashlib.sha256(serialize_graph(graph, 'graph6').encode('ascii')).hexdigest()
