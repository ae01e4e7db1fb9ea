import pytest

from molex.config import get_settings
from molex.services.graph_core import build


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def p5():
    return build(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


@pytest.fixture
def k14():
    return build(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def c6():
    return build(6, [(i, (i + 1) % 6) for i in range(6)])


@pytest.fixture
def two_triangles():
    return build(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def two_p3():
    return build(6, [(0, 1), (1, 2), (3, 4), (4, 5)])


@pytest.fixture
def hub_tree():
    """Degree-3 hub joined to three degree-4 vertices, each carrying three leaves (n = 13)."""
    edges = [(0, 1), (0, 2), (0, 3)]
    leaf = 4
    for q in (1, 2, 3):
        for _ in range(3):
            edges.append((q, leaf))
            leaf += 1
    return build(13, edges)
