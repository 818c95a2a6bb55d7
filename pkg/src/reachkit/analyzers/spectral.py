"""
Exact adjacency-matrix arithmetic: determinant, rank and null space.

No floating point anywhere: determinants and ranks use fraction-free Bareiss
elimination over Python integers, the null-space basis comes from sympy's
exact rational reduced echelon form.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy

from ..graphs.graph import Graph, VertexSet
from ..graphs.formats import serialize_graph
from .reach import FlowerDecomposition

logger = logging.getLogger(__name__)

ExactMatrix = List[List[int]]


def adjacency_matrix(graph: Graph) -> ExactMatrix:
    matrix = [[0] * graph.n for _ in range(graph.n)]
    for u, v in graph.edges:
        matrix[u][v] = matrix[v][u] = 1
    return matrix


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix; 1 for the empty matrix."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def bareiss_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix (not necessarily square)."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    previous = 1
    for col in range(cols):
        if rank == rows:
            break
        pivot = next((i for i in range(rank, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(rank + 1, rows):
            for j in range(col + 1, cols):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // previous
            a[i][col] = 0
        previous = a[rank][col]
        rank += 1
    return rank


def adjacency_determinant(graph: Graph) -> int:
    """det A(G)."""
    return bareiss_determinant(adjacency_matrix(graph))


def nullity(graph: Graph) -> int:
    return graph.n - bareiss_rank(adjacency_matrix(graph))


@dataclass(frozen=True)
class RationalBasis:
    """A basis of the null space of A(G), each vector of length n."""

    n: int
    vectors: Tuple[Tuple[Fraction, ...], ...]

    @property
    def nullity(self) -> int:
        return len(self.vectors)

    def support(self, i: int) -> Tuple[int, ...]:
        return tuple(j for j, x in enumerate(self.vectors[i]) if x != 0)

    def to_lists(self) -> List[List[str]]:
        return [[str(x) for x in vector] for vector in self.vectors]


def null_space_basis(graph: Graph) -> RationalBasis:
    """Reduced-echelon rational basis of ker A(G)."""
    if graph.n == 0:
        return RationalBasis(0, ())
    columns = sympy.Matrix(adjacency_matrix(graph)).nullspace()
    vectors = tuple(
        tuple(Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in column)
        for column in columns
    )
    return RationalBasis(graph.n, vectors)


def _part_determinants(graph: Graph, decomposition: FlowerDecomposition) -> List[Tuple[VertexSet, int]]:
    out = []
    for part in decomposition.part_sets():
        sub, _ = graph.induced_subgraph(part)
        out.append((part, adjacency_determinant(sub)))
    return out


@dataclass(frozen=True)
class DeterminantVerdict:
    holds: bool
    lhs: int
    rhs: int
    part_determinants: Tuple[Tuple[VertexSet, int], ...]
    graph6: str

    def to_dict(self) -> dict:
        return {
            'verdict': 'holds' if self.holds else 'counterexample',
            'lhs': self.lhs,
            'rhs': self.rhs,
            'parts': [{'vertices': list(p), 'det': d} for p, d in self.part_determinants],
            'graph': self.graph6,
        }


def check_determinant_conjecture(graph: Graph, decomposition: FlowerDecomposition) -> DeterminantVerdict:
    """Compare det A(G) with det A(G[B]) times the product of det A(G[R(C)])."""
    lhs = adjacency_determinant(graph)
    parts = _part_determinants(graph, decomposition)
    rhs = 1
    for _, det in parts:
        rhs *= det
    if lhs != rhs:
        logger.warning(f"🚨 determinant factorization fails: {lhs} != {rhs}")
    return DeterminantVerdict(lhs == rhs, lhs, rhs, tuple(parts), serialize_graph(graph, 'graph6'))


class NullSpaceStatus(Enum):
    SUPPORTED = "supported"
    VIOLATED = "violated"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class NullSpaceVerdict:
    status: NullSpaceStatus
    nullity: int
    supported_dimension: int
    part_nullities: Tuple[Tuple[VertexSet, int], ...]
    graph6: str

    def to_dict(self) -> dict:
        return {
            'verdict': self.status.value,
            'nullity': self.nullity,
            'supported_dimension': self.supported_dimension,
            'parts': [{'vertices': list(p), 'nullity': k} for p, k in self.part_nullities],
            'graph': self.graph6,
        }


def check_nullspace_decomposition(graph: Graph, decomposition: FlowerDecomposition) -> NullSpaceVerdict:
    """
    Whether ker A(G) has a basis whose vectors are each supported inside one
    part of the flower decomposition.

    The null vectors supported inside a part P form the kernel of the columns
    of A indexed by P, of dimension |P| - rank(A[:, P]). Parts are disjoint,
    so these subspaces are independent, and they span ker A(G) exactly when
    their dimensions add up to its nullity.
    """
    matrix = adjacency_matrix(graph)
    total = graph.n - bareiss_rank(matrix)
    supported = 0
    part_nullities = []
    for part in decomposition.part_sets():
        if not part:
            part_nullities.append((part, 0))
            continue
        columns = [[row[j] for j in part] for row in matrix]
        supported += len(part) - bareiss_rank(columns)
        sub, _ = graph.induced_subgraph(part)
        part_nullities.append((part, nullity(sub)))

    if total == 0:
        status = NullSpaceStatus.VACUOUS
    elif supported == total:
        status = NullSpaceStatus.SUPPORTED
    else:
        status = NullSpaceStatus.VIOLATED
        logger.warning(f"🚨 null space of dimension {total} has only {supported} part-supported dimensions")
    return NullSpaceVerdict(status, total, supported, tuple(part_nullities), serialize_graph(graph, 'graph6'))


def determinant_summary(graph: Graph) -> Dict[str, int]:
    return {'det': adjacency_determinant(graph), 'nullity': nullity(graph)}
