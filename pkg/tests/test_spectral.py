from fractions import Fraction

import pytest
from hypothesis import given, settings

from reachkit.analyzers.reach import flower_decomposition
from reachkit.analyzers.spectral import (
    NullSpaceStatus, adjacency_determinant, adjacency_matrix, bareiss_determinant, bareiss_rank,
    check_determinant_conjecture, check_nullspace_decomposition, determinant_summary,
    null_space_basis, nullity,
)
from reachkit.graphs import Graph, load_fixture

from .oracles import permutation_determinant
from .strategies import graphs


@given(graphs(max_n=7))
@settings(max_examples=80)
def test_bareiss_matches_leibniz_expansion(graph):
    assert adjacency_determinant(graph) == permutation_determinant(graph)


@given(graphs(max_n=6), graphs(max_n=6))
@settings(max_examples=40)
def test_determinant_is_multiplicative_over_disjoint_union(first, second):
    union = first.disjoint_union(second)
    assert adjacency_determinant(union) == adjacency_determinant(first) * adjacency_determinant(second)
    assert nullity(union) == nullity(first) + nullity(second)


def test_small_matrices():
    assert bareiss_determinant([]) == 1
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([[2, 1], [4, 2]]) == 0
    assert bareiss_rank([[1, 2, 3], [2, 4, 6]]) == 1
    assert bareiss_rank([]) == 0


@pytest.mark.parametrize("name,det", [
    ('F1', 2), ('F2', 2), ('F3', -2), ('F4', 2), ('F5', 4), ('F7', 1), ('F8', 0),
])
def test_fixture_determinants(name, det):
    assert adjacency_determinant(load_fixture(name)) == det


def test_determinant_factorization_with_block(tadpole_k2):
    verdict = check_determinant_conjecture(tadpole_k2, flower_decomposition(tadpole_k2))
    assert verdict.holds
    assert (verdict.lhs, verdict.rhs) == (2, 2)
    assert [d for _, d in verdict.part_determinants] == [-2, -1]
    assert verdict.to_dict()['verdict'] == 'holds'


def test_determinant_factorization_over_two_cycles(two_tadpoles):
    verdict = check_determinant_conjecture(two_tadpoles, flower_decomposition(two_tadpoles))
    assert verdict.holds
    assert [d for _, d in verdict.part_determinants] == [-2, -2, 1]


@pytest.mark.parametrize("name", ['F2', 'F4', 'F5'])
def test_nullspace_is_vacuous_for_nonsingular_graphs(name):
    graph = load_fixture(name)
    verdict = check_nullspace_decomposition(graph, flower_decomposition(graph))
    assert verdict.status is NullSpaceStatus.VACUOUS
    assert verdict.nullity == 0


def test_nullspace_supported_inside_one_part(double_pendant):
    verdict = check_nullspace_decomposition(double_pendant, flower_decomposition(double_pendant))
    assert verdict.status is NullSpaceStatus.SUPPORTED
    assert verdict.nullity >= 1
    assert verdict.supported_dimension == verdict.nullity


def test_nullspace_of_two_double_pendants(double_pendant):
    graph = double_pendant.disjoint_union(double_pendant)
    verdict = check_nullspace_decomposition(graph, flower_decomposition(graph))
    assert verdict.status is NullSpaceStatus.SUPPORTED
    assert verdict.nullity == 2 * nullity(double_pendant)


def test_null_space_basis_vectors_are_null(double_pendant):
    basis = null_space_basis(double_pendant)
    matrix = adjacency_matrix(double_pendant)
    assert basis.nullity == nullity(double_pendant)
    for vector in basis.vectors:
        for row in matrix:
            assert sum(Fraction(a) * x for a, x in zip(row, vector)) == 0
    assert set(basis.support(0)) <= {4, 5}


def test_null_space_of_empty_graph():
    assert null_space_basis(Graph(0)).nullity == 0
    assert null_space_basis(Graph(2)).nullity == 2


def test_determinant_summary(p4):
    assert determinant_summary(p4) == {'det': 1, 'nullity': 0}
