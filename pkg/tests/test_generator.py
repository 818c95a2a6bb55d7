import json

import networkx as nx
import pytest

from reachkit.analyzers.reach import is_r_disjoint
from reachkit.exceptions import DomainError, GenerationFailure
from reachkit.generators.random_graphs import (
    GenParams, RDisjointGenerator, generate_r_disjoint, instance_rng, sample_params,
)


@pytest.fixture
def generator(quiet_config):
    return RDisjointGenerator(quiet_config)


def test_single_tadpole_shape(generator, tadpole):
    params = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((2,),), seed=11)
    instance = generator.generate(params, 0)
    assert nx.is_isomorphic(instance.graph.to_networkx(), tadpole.to_networkx())
    assert instance.decomposition.k == 1
    assert instance.attempts == 1


def test_two_tadpoles_shape(generator, two_tadpoles):
    params = GenParams(k=2, cycle_lengths=(3, 3), tail_lengths=((2,), (2,)), seed=5)
    graph, decomposition = generate_r_disjoint(params, 3)
    assert nx.is_isomorphic(graph.to_networkx(), two_tadpoles.to_networkx())
    assert decomposition.k == 2
    assert is_r_disjoint(graph).is_r_disjoint


def test_bipartite_block_becomes_B(generator):
    params = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((2,),), bipartite_size=1, seed=2)
    instance = generator.generate(params, 0)
    assert instance.graph.n == 7
    assert instance.decomposition.B == (5, 6)


def test_generation_is_deterministic(generator):
    params = GenParams(k=2, cycle_lengths=(3, 5), tail_lengths=((2,), (2, 2)),
                       bipartite_size=2, density=0.5, cross_edges=3, seed=42, relabel=True)
    first = [generator.generate(params, i).graph for i in range(3)]
    second = [RDisjointGenerator(caps=generator.caps).generate(params, i).graph for i in range(3)]
    assert first == second
    for graph in first:
        assert graph.n == params.total_vertices
        assert is_r_disjoint(graph).is_r_disjoint


def test_instance_streams_are_independent():
    assert instance_rng(1, 0).integers(1 << 30) == instance_rng(1, 0).integers(1 << 30)
    assert instance_rng(1, 0).integers(1 << 30, size=4).tolist() != instance_rng(1, 1).integers(1 << 30, size=4).tolist()


@pytest.mark.parametrize("fields", [
    {'cycle_lengths': (4,)},
    {'cycle_lengths': (1,)},
    {'k': 2, 'cycle_lengths': (3,)},
    {'k': 0, 'cycle_lengths': ()},
    {'tail_lengths': ((3,),)},
    {'tail_lengths': ((2,), (2,))},
    {'density': 1.5},
    {'cross_edges': -1},
    {'max_retries': 0},
    {'seed': 2 ** 64},
    {'seed': -1},
])
def test_invalid_params_are_domain_errors(fields):
    with pytest.raises(DomainError):
        GenParams(**fields)


def test_params_from_mappings_and_files(tmp_path):
    params = GenParams.from_dict({'k': 2, 'cycle_lengths': [3, 5], 'tail_lengths': [[2], []], 'seed': 9})
    assert params.cycle_lengths == (3, 5)
    assert params.tail_lengths == ((2,), ())
    assert GenParams.from_dict(params.to_dict()) == params

    path = tmp_path / "params.yaml"
    path.write_text("k: 1\ncycle_lengths: [5]\nbipartite_size: 2\n", encoding='utf-8')
    loaded = GenParams.from_file(str(path))
    assert loaded.total_vertices == 9

    path.write_text(json.dumps({'k': 1, 'cycle_lengths': [3]}), encoding='utf-8')
    assert GenParams.from_file(str(path)).cycle_lengths == (3,)


def test_params_reject_unknown_keys_and_bad_files(tmp_path):
    with pytest.raises(DomainError):
        GenParams.from_dict({'k': 1, 'colour': 'red'})
    with pytest.raises(DomainError):
        GenParams.from_file(str(tmp_path / "missing.yaml"))
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding='utf-8')
    with pytest.raises(DomainError):
        GenParams.from_file(str(path))


def test_rejection_budget_raises_generation_failure(generator, monkeypatch):
    monkeypatch.setattr(generator, '_accepts', lambda graph, k: False)
    with pytest.raises(GenerationFailure) as info:
        generator.generate(GenParams(max_retries=2, seed=3), 4)
    assert info.value.exit_code == 3
    assert info.value.diagnostics['rejected'] == {'verifier': 2}
    assert info.value.diagnostics['index'] == 4


def test_almost_bipartite_non_ke(generator):
    params = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((2,),), bipartite_size=1, cross_edges=2, seed=8)
    instance = generator.generate_almost_bipartite_non_ke(params, 0)
    assert instance.decomposition is None
    assert not instance.certificate.is_konig_egervary
    assert instance.certificate.certificate is not None


def test_almost_bipartite_needs_one_cycle(generator):
    with pytest.raises(DomainError):
        generator.generate_almost_bipartite_non_ke(GenParams(k=2, cycle_lengths=(3, 3)))


def test_corpus_files(generator, tmp_path):
    params = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((2,),), cross_edges=1, seed=21)
    manifest = generator.generate_corpus(params, 3, str(tmp_path / "corpus"))
    lines = (tmp_path / "corpus" / "graphs.g6").read_text(encoding='utf-8').splitlines()
    assert len(lines) == 3
    on_disk = json.loads((tmp_path / "corpus" / "manifest.json").read_text(encoding='utf-8'))
    assert on_disk == manifest
    assert manifest['schema_version'] == 1
    assert [g['index'] for g in manifest['graphs']] == [0, 1, 2]
    assert manifest['params']['seed'] == 21


def test_corpus_is_reproducible(generator, tmp_path):
    params = GenParams(k=2, cycle_lengths=(3, 3), cross_edges=2, seed=77, relabel=True)
    generator.generate_corpus(params, 2, str(tmp_path / "a"))
    generator.generate_corpus(params, 2, str(tmp_path / "b"))
    assert (tmp_path / "a" / "graphs.g6").read_bytes() == (tmp_path / "b" / "graphs.g6").read_bytes()
    assert (tmp_path / "a" / "manifest.json").read_bytes() == (tmp_path / "b" / "manifest.json").read_bytes()


def test_sample_params_fit_the_size_bound():
    for index in range(30):
        params = sample_params(5, index, max_n=11)
        assert params.total_vertices <= 11
        assert params.k in (1, 2, 3)
        assert params.relabel
    assert sample_params(5, 3, 11) == sample_params(5, 3, 11)


def test_sample_params_respects_k_choices():
    assert {sample_params(1, i, 12, k_choices=(2,)).k for i in range(10)} == {2}
    with pytest.raises(DomainError):
        sample_params(1, 0, max_n=2)
    with pytest.raises(DomainError):
        sample_params(1, 0, max_n=8, k_choices=(3,))


def test_pendant_trees_branch(generator):
    params = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((6,),), pendant_trees=True, seed=13)
    branching = 0
    for index in range(20):
        instance = generator.generate(params, index)
        graph = instance.graph
        assert graph.n == params.total_vertices == 9
        assert graph.m == 9
        assert len(graph.connected_components()) == 1
        assert instance.decomposition.k == 1
        if max(graph.degree(v) for v in range(3, 9)) >= 3:
            branching += 1
    assert branching > 0


def test_pendant_paths_keep_their_shape(generator, tadpole):
    paths = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((2,),), seed=11)
    trees = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((2,),), pendant_trees=True, seed=11)
    for params in (paths, trees):
        graph = generator.generate(params, 0).graph
        assert nx.is_isomorphic(graph.to_networkx(), tadpole.to_networkx())


def test_connected_mode_joins_the_blocks(generator):
    params = GenParams(k=2, cycle_lengths=(3, 3), tail_lengths=((2,), (2,)), bipartite_size=1,
                       connected=True, seed=19)
    for index in range(5):
        instance = generator.generate(params, index)
        assert len(instance.graph.connected_components()) == 1
        assert instance.graph.m >= 13
        assert instance.decomposition.k == 2
        assert is_r_disjoint(instance.graph).is_r_disjoint


def test_connected_mode_counts_disconnected_rejections(generator, monkeypatch):
    monkeypatch.setattr(generator, '_connect', lambda graph, rng, accept: graph)
    params = GenParams(k=2, cycle_lengths=(3, 3), connected=True, max_retries=3, seed=4)
    with pytest.raises(GenerationFailure) as info:
        generator.generate(params, 0)
    assert info.value.diagnostics['rejected'] == {'disconnected': 3}


def test_sample_params_ask_for_connected_pendant_trees():
    sampled = [sample_params(9, i, 20) for i in range(40)]
    assert all(p.pendant_trees and p.connected for p in sampled)
    assert all(min(len(t) for t in p.tail_lengths) >= 1 for p in sampled)
    assert max(p.cross_edges for p in sampled) > 3
    assert all(p.cross_edges <= -(-p.total_vertices // 4) for p in sampled)


def test_almost_bipartite_corpus_lists_certificates(generator, tmp_path):
    params = GenParams(k=1, cycle_lengths=(3,), tail_lengths=((2,),), bipartite_size=1, cross_edges=2, seed=8)
    manifest = generator.generate_corpus(params, 2, str(tmp_path / "abnk"), almost_bipartite=True)
    assert len(manifest['certificates']) == 2
    assert all(c['type'] in ('flower', 'posy') for c in manifest['certificates'])
    assert json.loads((tmp_path / "abnk" / "manifest.json").read_text(encoding='utf-8')) == manifest
    plain = generator.generate_corpus(params, 1, str(tmp_path / "plain"))
    assert 'certificates' not in plain
