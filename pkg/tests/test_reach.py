from dataclasses import replace

import pytest
from hypothesis import given, settings

from reachkit.analyzers.matching import Matching, maximum_matching
from reachkit.analyzers.reach import (
    FlowerDecomposition, VerdictKind, crossing_matched_edges, flower_decomposition,
    is_r_disjoint, reach_set, reach_set_oracle, restriction_is_maximum, validate_decomposition,
)
from reachkit.analyzers.structure import OddCycle, enumerate_odd_cycles
from reachkit.exceptions import PreconditionError, TheoremViolation
from reachkit.graphs import Graph, load_fixture

from .strategies import odd_cycle_graphs


def triangle_of(graph):
    return OddCycle.canonical(graph, [0, 1, 2])


def test_tadpole_reach_set(tadpole):
    reach = reach_set(tadpole, triangle_of(tadpole))
    assert reach.vertices == (0, 1, 2, 3, 4)
    assert reach.odd == (3,)
    assert reach.even == (4,)
    assert reach == reach_set_oracle(tadpole, triangle_of(tadpole))


def test_double_pendant_reach_set(double_pendant):
    reach = reach_set(double_pendant, triangle_of(double_pendant))
    assert reach.to_dict() == {
        'cycle': [0, 1, 2], 'R': [0, 1, 2, 3, 4, 5], 'R_odd': [3], 'R_even': [4, 5], 'parity_conflicts': [],
    }
    assert reach == reach_set_oracle(double_pendant, triangle_of(double_pendant))


def test_reach_stops_at_perfectly_matched_block(tadpole_k2):
    reach = reach_set(tadpole_k2, triangle_of(tadpole_k2))
    assert reach.vertices == (0, 1, 2, 3, 4)
    assert reach_set_oracle(tadpole_k2, triangle_of(tadpole_k2)).vertices == reach.vertices


def test_reach_set_is_empty_outside_D(posy_bridge):
    reach = reach_set(posy_bridge, triangle_of(posy_bridge))
    assert reach.empty
    assert reach_set_oracle(posy_bridge, triangle_of(posy_bridge)).empty


@given(odd_cycle_graphs(max_n=8))
@settings(max_examples=80, deadline=None)
def test_fast_reach_set_matches_oracle(graph):
    for cycle in enumerate_odd_cycles(graph):
        fast, exact = reach_set(graph, cycle), reach_set_oracle(graph, cycle)
        assert (fast.vertices, fast.odd, fast.even, fast.conflicts) == \
            (exact.vertices, exact.odd, exact.even, exact.conflicts)


def test_shared_class_falls_back_to_oracle():
    graph = Graph.from_edges(9, [(0, 1), (0, 6), (0, 7), (1, 2), (1, 7), (2, 3), (2, 4),
                                 (3, 4), (4, 5), (5, 8), (6, 7)])
    for cycle in (OddCycle.canonical(graph, [0, 6, 7]), OddCycle.canonical(graph, [2, 3, 4])):
        reach = reach_set(graph, cycle)
        assert reach.method == 'oracle'
        assert reach == reach_set_oracle(graph, cycle)
    first = reach_set(graph, OddCycle.canonical(graph, [0, 6, 7]))
    assert first.conflicts == (3, 4)
    assert set(first.conflicts) <= set(first.odd)
    assert not is_r_disjoint(graph).is_r_disjoint


@pytest.mark.parametrize("name,kind", [
    ('F1', VerdictKind.R_DISJOINT),
    ('F2', VerdictKind.R_DISJOINT),
    ('F3', VerdictKind.R_DISJOINT),
    ('F4', VerdictKind.R_DISJOINT),
    ('F5', VerdictKind.R_DISJOINT),
    ('F6', VerdictKind.EMPTY_REACH),
    ('F7', VerdictKind.NO_ODD_CYCLE),
    ('F8', VerdictKind.R_DISJOINT),
])
def test_fixture_verdicts(name, kind):
    assert is_r_disjoint(load_fixture(name)).kind is kind


def test_two_tadpoles_have_separate_reach_sets(two_tadpoles):
    verdict = is_r_disjoint(two_tadpoles)
    assert [r.vertices for r in verdict.reach_sets] == [(0, 1, 2, 3, 4), (5, 6, 7, 8, 9)]
    assert verdict.to_dict()['verdict'] == 'r_disjoint'


def test_empty_reach_names_the_cycle(posy_bridge):
    verdict = is_r_disjoint(posy_bridge)
    assert [c.vertices for c in verdict.witness] == [(0, 1, 2)]
    assert not verdict.is_r_disjoint


def test_overlapping_cycles_with_empty_reach():
    k4 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert is_r_disjoint(k4).kind is VerdictKind.EMPTY_REACH


def test_decomposition_with_block(tadpole_k2):
    decomposition = flower_decomposition(tadpole_k2)
    assert decomposition.k == 1
    assert decomposition.B == (5, 6)
    assert decomposition.part_sets() == [(0, 1, 2, 3, 4), (5, 6)]
    assert decomposition.part_index(6) == 1
    assert decomposition.to_dict()['B'] == [5, 6]


@pytest.mark.parametrize("name,k,block", [
    ('F1', 1, ()), ('F2', 1, ()), ('F3', 1, ()), ('F5', 2, ()), ('F8', 1, ()),
])
def test_decomposition_shapes(name, k, block):
    decomposition = flower_decomposition(load_fixture(name))
    assert (decomposition.k, decomposition.B) == (k, block)


def test_decomposition_requires_r_disjoint(posy_bridge):
    with pytest.raises(PreconditionError) as info:
        flower_decomposition(posy_bridge)
    assert info.value.verdict.kind is VerdictKind.EMPTY_REACH


def test_validation_rejects_a_broken_partition(tadpole_k2):
    good = flower_decomposition(tadpole_k2)
    missing_block = FlowerDecomposition(good.parts, (5,))
    with pytest.raises(TheoremViolation) as info:
        validate_decomposition(tadpole_k2, missing_block)
    assert info.value.check == 'partition'
    overlapping = FlowerDecomposition(good.parts, (4, 5, 6))
    with pytest.raises(TheoremViolation):
        validate_decomposition(tadpole_k2, overlapping)


def test_validation_rejects_parity_conflicts(tadpole):
    good = flower_decomposition(tadpole)
    conflicted = FlowerDecomposition((replace(good.parts[0], conflicts=(3,)),), good.B)
    with pytest.raises(TheoremViolation) as info:
        validate_decomposition(tadpole, conflicted)
    assert info.value.check == 'parity_consistency'
    assert info.value.witness == {'cycle': [0, 1, 2], 'conflicts': [3]}


def test_matching_restricts_to_every_part(tadpole_k2):
    decomposition = flower_decomposition(tadpole_k2)
    assert restriction_is_maximum(tadpole_k2, decomposition, maximum_matching(tadpole_k2))
    assert crossing_matched_edges(decomposition, maximum_matching(tadpole_k2)) == []


def test_crossing_matched_edges(tadpole_k2):
    decomposition = flower_decomposition(tadpole_k2)
    matching = Matching(tadpole_k2, frozenset({(0, 1), (3, 5)}))
    assert crossing_matched_edges(decomposition, matching) == [(3, 5)]
    assert not restriction_is_maximum(tadpole_k2, decomposition, matching)
