import pytest

from reachkit.caps import Caps
from reachkit.graphs import fixture_names, load_fixture


@pytest.fixture(params=fixture_names())
def any_fixture(request):
    return request.param, load_fixture(request.param)


@pytest.fixture
def caps():
    return Caps()


@pytest.fixture
def triangle():
    return load_fixture('F1')


@pytest.fixture
def c5():
    return load_fixture('F2')


@pytest.fixture
def tadpole():
    return load_fixture('F3')


@pytest.fixture
def tadpole_k2():
    return load_fixture('F4')


@pytest.fixture
def two_tadpoles():
    return load_fixture('F5')


@pytest.fixture
def posy_bridge():
    return load_fixture('F6')


@pytest.fixture
def p4():
    return load_fixture('F7')


@pytest.fixture
def double_pendant():
    return load_fixture('F8')


@pytest.fixture
def quiet_config():
    """Config with progress bars off, for commands run inside tests."""
    return {
        'generator': {'max_retries': 200, 'progress': False},
        'search': {'workers': 1, 'chunksize': 1, 'max_n': 10, 'progress': False},
    }
