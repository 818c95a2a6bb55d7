import pytest
from hypothesis import given, settings

from reachkit.analyzers.independence import (
    core_corona, critical_difference, critical_in_D, difference, enumerate_mis,
    independence_number, independence_profile, is_critical, ker_set, mis_in_D,
)
from reachkit.analyzers.structure import gallai_edmonds
from reachkit.caps import Caps
from reachkit.exceptions import CapExceeded
from reachkit.graphs import Graph

from .oracles import brute_alpha, brute_critical_difference, brute_maximum_independent_sets
from .strategies import graphs


@given(graphs(max_n=10))
def test_alpha_agrees_with_clique_oracle(graph):
    assert independence_number(graph) == brute_alpha(graph)


@given(graphs(max_n=7))
@settings(max_examples=60)
def test_critical_difference_over_all_subsets(graph):
    assert critical_difference(graph)[0] == brute_critical_difference(graph)


@given(graphs())
def test_ker_lies_inside_core(graph):
    profile = independence_profile(graph)
    assert set(profile.ker) <= set(profile.core)
    assert profile.alpha + profile.tau == graph.n


@given(graphs())
def test_every_maximum_independent_set_is_independent(graph):
    mis = enumerate_mis(graph)
    alpha = independence_number(graph)
    assert mis == sorted(set(mis))
    assert all(len(s) == alpha and graph.is_independent(s) for s in mis)


@given(graphs(max_n=9))
@settings(max_examples=80, deadline=None)
def test_maximum_independent_sets_match_exhaustive_search(graph):
    assert enumerate_mis(graph) == brute_maximum_independent_sets(graph)


def test_hub_branching_on_a_star():
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    assert enumerate_mis(star) == [(1, 2, 3, 4, 5)]
    with_edge = star.disjoint_union(Graph.from_edges(2, [(0, 1)]))
    assert enumerate_mis(with_edge) == [(1, 2, 3, 4, 5, 6), (1, 2, 3, 4, 5, 7)]


def test_tadpole_maximum_independent_sets(tadpole):
    assert enumerate_mis(tadpole) == [(0, 3), (0, 4), (1, 3), (1, 4), (2, 4)]
    assert core_corona(tadpole) == ((), (0, 1, 2, 3, 4))


def test_tadpole_critical_sets(tadpole):
    assert critical_difference(tadpole) == (0, [(), (4,)])
    assert ker_set(tadpole) == ()


def test_double_pendant_profile(double_pendant):
    profile = independence_profile(double_pendant)
    assert profile.alpha == 3
    assert profile.core == (4, 5)
    assert profile.corona == (0, 1, 2, 4, 5)
    assert profile.d == 1
    assert profile.critical_sets == ((4, 5),)
    assert profile.ker == (4, 5)
    assert profile.mis_count == 3


def test_path_critical_sets(p4):
    d, witnesses = critical_difference(p4)
    assert d == 0
    assert witnesses == [(), (0,), (3,), (0, 2), (0, 3), (1, 3)]


def test_empty_graph_profile():
    profile = independence_profile(Graph(3))
    assert profile.alpha == 3
    assert profile.core == profile.corona == profile.ker == (0, 1, 2)
    assert profile.d == 3


def test_difference_and_criticality(double_pendant):
    assert difference(double_pendant, [4, 5]) == 1
    assert difference(double_pendant, [0]) == -1
    assert is_critical(double_pendant, [4, 5])
    assert not is_critical(double_pendant, [4])
    assert not is_critical(double_pendant, [3, 4])


def test_critical_set_inside_D(tadpole_k2):
    ge = gallai_edmonds(tadpole_k2)
    assert critical_in_D(tadpole_k2, ge.D) == ()


def test_mis_in_D(tadpole_k2):
    ge = gallai_edmonds(tadpole_k2)
    found = mis_in_D(tadpole_k2, [0, 1, 2, 3, 4], ge.D)
    assert found is not None and set(found) <= set(ge.D)
    assert mis_in_D(tadpole_k2, [5, 6], ge.D) is None


def test_vertex_limit(tadpole):
    with pytest.raises(CapExceeded) as info:
        independence_number(tadpole, Caps(mis_vertex_limit=3))
    assert info.value.what == 'mis_vertex_limit'
    with pytest.raises(CapExceeded):
        critical_difference(tadpole, Caps(mis_vertex_limit=3))


def test_independent_set_cap(p4):
    with pytest.raises(CapExceeded):
        critical_difference(p4, Caps(independent_sets=3))
