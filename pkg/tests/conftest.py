import pytest

from groupchoose.graphs import Graph, complete_graph, cycle_graph


@pytest.fixture
def bowtie() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph(range(5), [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


@pytest.fixture
def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


@pytest.fixture
def two_triangle_hub() -> Graph:
    """Degree-4 hub on two vertex-disjoint triangles; edge ids 0..5 are
    hub-1, hub-2, hub-3, hub-4, 3-4, 1-2."""
    return Graph(range(5), [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4), (1, 2)])


def k4() -> Graph:
    return complete_graph(4)


def c(n: int) -> Graph:
    return cycle_graph(n)
