import pytest
from hypothesis import given, settings

from reachkit.analyzers.matching import Matching, matching_number, maximum_matching
from reachkit.analyzers.structure import (
    OddCycle, blossom_base, enumerate_odd_cycles, find_flowers, find_posy,
    gallai_edmonds, gallai_edmonds_oracle, is_konig_egervary, is_odd_cycle_disjoint,
)
from reachkit.caps import Caps
from reachkit.exceptions import CapExceeded, DomainError
from reachkit.graphs import Graph, load_fixture

from .oracles import brute_alpha
from .strategies import graphs


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def test_gallai_edmonds_tadpole(tadpole):
    ge = gallai_edmonds(tadpole)
    assert (ge.D, ge.A, ge.C) == ((0, 1, 2, 4), (3,), ())
    assert ge.part_of(3) == 'A'


def test_gallai_edmonds_with_perfectly_matched_block(tadpole_k2):
    ge = gallai_edmonds(tadpole_k2)
    assert ge.to_dict() == {'D': [0, 1, 2, 4], 'A': [3], 'C': [5, 6]}


def test_gallai_edmonds_of_path(p4):
    assert gallai_edmonds(p4).C == (0, 1, 2, 3)


@given(graphs(max_n=7))
@settings(max_examples=60)
def test_gallai_edmonds_agrees_with_enumeration(graph):
    assert gallai_edmonds(graph) == gallai_edmonds_oracle(graph)


def test_canonical_cycle_form(triangle, c5):
    assert OddCycle.canonical(triangle, [2, 1, 0]).vertices == (0, 1, 2)
    assert OddCycle.canonical(c5, [3, 2, 1, 0, 4]).vertices == (0, 1, 2, 3, 4)
    assert OddCycle.canonical(c5, [0, 1, 2, 3, 4]).k == 2


@pytest.mark.parametrize("sequence", [[0, 1], [0, 1, 2, 3], [0, 1, 3]])
def test_canonical_rejects_non_cycles(tadpole, sequence):
    with pytest.raises(DomainError):
        OddCycle.canonical(tadpole, sequence)


@pytest.mark.parametrize("name,cycles", [
    ('F1', [(0, 1, 2)]),
    ('F2', [(0, 1, 2, 3, 4)]),
    ('F5', [(0, 1, 2), (5, 6, 7)]),
    ('F6', [(0, 1, 2), (3, 4, 5)]),
    ('F7', []),
])
def test_enumerate_odd_cycles(name, cycles):
    assert [c.vertices for c in enumerate_odd_cycles(load_fixture(name))] == cycles


def test_odd_cycles_of_k4_share_vertices(k4):
    result = is_odd_cycle_disjoint(k4)
    assert len(result.cycles) == 4
    assert not result.disjoint
    first, second = result.pair
    assert set(first.vertices) & set(second.vertices)


def test_odd_cycle_caps(tadpole, k4):
    with pytest.raises(CapExceeded) as info:
        enumerate_odd_cycles(tadpole, Caps(odd_cycle_vertex_limit=4))
    assert info.value.what == 'odd_cycle_vertices'
    with pytest.raises(CapExceeded) as info:
        enumerate_odd_cycles(k4, Caps(odd_cycles=2))
    assert len(info.value.partial) == 2


def test_odd_cycle_disjoint_fixture(two_tadpoles):
    assert is_odd_cycle_disjoint(two_tadpoles).disjoint


def test_flowers_on_tadpole(tadpole):
    cycle = OddCycle.canonical(tadpole, [0, 1, 2])
    stems = {
        frozenset({(0, 1), (2, 3)}): [(2, 3, 4)],
        frozenset({(0, 1), (3, 4)}): [(2,)],
        frozenset({(0, 2), (3, 4)}): [(1,)],
        frozenset({(1, 2), (3, 4)}): [(0,)],
    }
    for edges, expected in stems.items():
        flowers = find_flowers(tadpole, Matching(tadpole, edges), cycle)
        assert [f.stem for f in flowers] == expected


def test_flower_accessors(tadpole):
    cycle = OddCycle.canonical(tadpole, [0, 1, 2])
    flower = find_flowers(tadpole, Matching(tadpole, frozenset({(0, 1), (2, 3)})), cycle)[0]
    assert (flower.base, flower.root) == (2, 4)
    assert flower.vertex_set == (0, 1, 2, 3, 4)
    assert flower.stem_index(4) == 2
    assert flower.stem_index(0) is None
    assert flower.to_dict()['blossom'] == [0, 1, 2]


def test_five_cycle_flower(c5):
    cycle = OddCycle.canonical(c5, [0, 1, 2, 3, 4])
    flowers = find_flowers(c5, Matching(c5, frozenset({(0, 1), (2, 3)})), cycle)
    assert [(f.blossom.vertices, f.stem) for f in flowers] == [((0, 1, 2, 3, 4), (4,))]


def test_cycle_that_is_not_a_blossom(tadpole):
    cycle = OddCycle.canonical(tadpole, [0, 1, 2])
    matching = Matching(tadpole, frozenset({(2, 3)}))
    assert blossom_base(matching, cycle) is None
    assert find_flowers(tadpole, matching, cycle) == []


def test_posy_across_a_bridge(posy_bridge):
    matching = maximum_matching(posy_bridge)
    assert len(matching) == 3
    posy = find_posy(posy_bridge, matching)
    assert posy is not None
    assert posy.first.vertices == (0, 1, 2)
    assert posy.second.vertices == (3, 4, 5)
    assert posy.path == (2, 3)
    assert posy.is_classical


def test_konig_egervary_path(p4):
    result = is_konig_egervary(p4)
    assert result.is_konig_egervary
    assert result.certificate is None
    assert result.alpha == 2


def test_konig_egervary_flower_certificate(tadpole):
    result = is_konig_egervary(tadpole)
    assert not result.is_konig_egervary
    assert result.certificate['type'] == 'flower'


def test_konig_egervary_posy_certificates(posy_bridge, k4):
    result = is_konig_egervary(posy_bridge)
    assert not result.is_konig_egervary
    assert result.flower is None and result.posy is not None

    result = is_konig_egervary(k4)
    assert not result.is_konig_egervary
    assert result.certificate['type'] == 'posy'
    assert not result.posy.is_classical


@given(graphs())
def test_konig_egervary_matches_alpha_plus_mu(graph):
    result = is_konig_egervary(graph)
    assert result.is_konig_egervary == (brute_alpha(graph) + matching_number(graph) == graph.n)


@given(graphs())
def test_bipartite_graphs_are_konig_egervary(graph):
    if graph.is_bipartite():
        assert is_konig_egervary(graph).is_konig_egervary
