import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reachkit.exceptions import DomainError
from reachkit.graphs import Graph, fingerprint, load_fixture
from reachkit.graphs.fixtures import fixture_names, fixture_path

from .strategies import graphs


def test_from_edges_normalizes_orientation():
    graph = Graph.from_edges(3, [(1, 0), (2, 0), (2, 1)])
    assert graph.sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    assert graph.neighbors(0) == [1, 2]


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(0, 1), (1, 0)]])
def test_from_edges_rejects_non_simple_input(edges):
    with pytest.raises(DomainError):
        Graph.from_edges(3, edges)


def test_adjacency_is_symmetric(any_fixture):
    _, graph = any_fixture
    for u in graph.vertices:
        for v in graph.adjacency[u]:
            assert u in graph.adjacency[v]
            assert graph.has_edge(u, v)


def test_induced_subgraph_of_tadpole_k2_is_tadpole(tadpole_k2, tadpole):
    sub, index = tadpole_k2.induced_subgraph([0, 1, 2, 3, 4])
    assert index == {v: v for v in range(5)}
    assert sub == tadpole


def test_induced_subgraph_edge_cases(triangle):
    empty, index = triangle.induced_subgraph([])
    assert empty.n == 0 and empty.m == 0 and index == {}
    whole, _ = triangle.induced_subgraph([2, 0, 1])
    assert whole == triangle


def test_induced_subgraph_relabels_in_ascending_order(double_pendant):
    sub, index = double_pendant.induced_subgraph([3, 4, 5])
    assert index == {3: 0, 4: 1, 5: 2}
    assert sub.sorted_edges() == [(0, 1), (0, 2)]


def test_induced_subgraph_rejects_out_of_range(triangle):
    with pytest.raises(DomainError):
        triangle.induced_subgraph([0, 3])


def test_boundary_of_block_in_tadpole_k2(tadpole_k2):
    crossing, touched = tadpole_k2.boundary([5, 6])
    assert crossing == [(3, 5)]
    assert touched == (5,)


def test_boundary_of_whole_vertex_set_is_empty(triangle):
    assert triangle.boundary([0, 1, 2]) == ([], ())


def test_boundary_of_triangle_in_tadpole(tadpole):
    assert tadpole.boundary([0, 1, 2]) == ([(2, 3)], (2,))


@given(graphs(), st.data())
def test_boundary_is_symmetric(graph, data):
    subset = data.draw(st.sets(st.integers(min_value=0, max_value=max(graph.n - 1, 0))))
    subset = {v for v in subset if v < graph.n}
    rest = set(graph.vertices) - subset
    assert len(graph.boundary(subset)[0]) == len(graph.boundary(rest)[0])


@given(graphs())
def test_induced_subgraph_on_all_vertices_is_identity(graph):
    sub, index = graph.induced_subgraph(graph.vertices)
    assert sub == graph
    assert all(index[v] == v for v in graph.vertices)


def test_neighborhood_and_independence(double_pendant):
    assert double_pendant.neighborhood([4, 5]) == (3,)
    assert double_pendant.is_independent([0, 3])
    assert not double_pendant.is_independent([2, 3])


def test_connected_components_are_ordered(two_tadpoles):
    assert two_tadpoles.connected_components() == [(0, 1, 2, 3, 4), (5, 6, 7, 8, 9)]
    assert two_tadpoles.connected_components([0, 1, 3, 4]) == [(0, 1), (3, 4)]


def test_disjoint_union_of_tadpoles(tadpole, two_tadpoles):
    assert tadpole.disjoint_union(tadpole) == two_tadpoles


def test_relabel_requires_permutation(triangle):
    assert triangle.relabel([2, 1, 0]) == triangle
    with pytest.raises(DomainError):
        triangle.relabel([0, 0, 1])


def test_bipartiteness(p4, triangle):
    assert p4.is_bipartite()
    assert not triangle.is_bipartite()


def test_fingerprint_is_stable_and_distinguishes(triangle, p4):
    assert fingerprint(triangle) == fingerprint(Graph.from_edges(3, [(1, 2), (0, 2), (0, 1)]))
    assert fingerprint(triangle) != fingerprint(p4)
    assert len(fingerprint(triangle)) == 64


def test_fixture_names_and_lookup():
    assert fixture_names() == ['F1', 'F2', 'F3', 'F4', 'F5', 'F6', 'F7', 'F8']
    assert fixture_path('f3').name == 'tadpole.txt'
    assert load_fixture('tadpole') == load_fixture('F3')
    with pytest.raises(DomainError):
        fixture_path('F9')


@pytest.mark.parametrize("name,n,m", [
    ('F1', 3, 3), ('F2', 5, 5), ('F3', 5, 5), ('F4', 7, 7),
    ('F5', 10, 10), ('F6', 6, 7), ('F7', 4, 3), ('F8', 6, 6),
])
def test_fixture_sizes(name, n, m):
    graph = load_fixture(name)
    assert (graph.n, graph.m) == (n, m)
