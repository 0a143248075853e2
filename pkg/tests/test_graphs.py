import itertools
import random

import pytest

from groupchoose.graphs import (
    Graph,
    GraphError,
    blocks,
    blocks_all_complete_or_cycle,
    chromatic_index,
    complete_graph,
    cycle_graph,
    cycle_spectrum,
    degeneracy_order,
    find_2_alternating_cycle,
    has_minor,
    k23_plus,
    line_graph,
    min_degree_sum_edge,
    path_graph,
    star_graph,
)
from groupchoose.generate import are_isomorphic


def test_graph_rejects_loops_and_duplicate_ids():
    with pytest.raises(GraphError):
        Graph([0, 1], [(0, 0)])
    with pytest.raises(GraphError):
        Graph([0, 1], [(0, 1, 7), (1, 0, 7)])


def test_edge_ids_stable_under_deletion():
    g = Graph(range(3), [(0, 1), (1, 2), (0, 2)])
    h = g.without_edge(1)
    assert h.edge_ids() == (0, 2)
    assert h.edge(2).endpoints == (0, 2)


def test_parallel_edges_allowed():
    g = Graph([0, 1], [(0, 1), (0, 1)])
    assert g.m == 2 and g.degree(0) == 2
    assert not g.is_simple()


# line graphs


def test_line_graph_of_path_is_shorter_path():
    lg = line_graph(path_graph(4))  # 3 edges
    assert are_isomorphic(lg, path_graph(3))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_line_graph_of_cycle_is_cycle(n):
    assert are_isomorphic(line_graph(cycle_graph(n)), cycle_graph(n))


def test_line_graph_of_k4_is_octahedron():
    lg = line_graph(complete_graph(4))
    assert lg.n == 6 and lg.m == 12
    assert all(lg.degree(v) == 4 for v in lg.vertices)


def test_line_graph_empty_edges_error():
    with pytest.raises(GraphError):
        line_graph(Graph([0, 1]))


def test_line_graph_degree_identity():
    # d_l(uv) = d(u) + d(v) - 2 for simple graphs; max degree <= 2*maxdeg - 2
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(2, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        if not edges:
            continue
        g = Graph(range(n), edges)
        lg = line_graph(g)
        for e in g.edges:
            assert lg.degree(e.id) == g.degree(e.u) + g.degree(e.v) - 2
        assert lg.max_degree() <= 2 * g.max_degree() - 2


def test_parallel_edges_become_adjacent_line_vertices():
    g = Graph([0, 1], [(0, 1), (0, 1)])
    lg = line_graph(g)
    assert lg.has_edge(0, 1) and lg.is_simple()


# blocks


def test_blocks_two_triangles(bowtie):
    bl, cuts = blocks(bowtie)
    assert sorted(sorted(b) for b in bl) == [[0, 1, 2], [0, 3, 4]]
    assert cuts == frozenset({0})


def test_blocks_cycle_and_star():
    bl, cuts = blocks(cycle_graph(5))
    assert len(bl) == 1 and not cuts
    bl, cuts = blocks(star_graph(3))
    assert len(bl) == 3 and cuts == frozenset({0})


def test_blocks_partition_edges():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 9)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        g = Graph(range(n), edges)
        bl, _ = blocks(g)
        total = sum(g.induced(b).m for b in bl)
        assert total == g.m


def test_blocks_all_complete_or_cycle():
    assert blocks_all_complete_or_cycle(complete_graph(4))
    assert blocks_all_complete_or_cycle(cycle_graph(6))
    assert not blocks_all_complete_or_cycle(complete_graph(4).without_edge(0))
    with pytest.raises(GraphError):
        blocks_all_complete_or_cycle(Graph([0, 1]))  # disconnected


# minors


def test_minor_examples():
    assert has_minor(complete_graph(4), "K4")
    assert not has_minor(path_graph(8), "K4")
    assert has_minor(k23_plus(), "K23_PLUS")
    assert has_minor(complete_graph(5), "K23")
    assert not has_minor(cycle_graph(6), "K23")


def test_minor_monotone_under_supergraphs():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(4, 7)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.45]
        g = Graph(range(n), edges)
        if not has_minor(g, "K4"):
            continue
        extra = [e for e in itertools.combinations(range(n), 2) if not g.has_edge(*e)]
        if extra:
            bigger = g.with_edge(*rng.choice(extra))
            assert has_minor(bigger, "K4")


def test_minor_cap():
    with pytest.raises(GraphError):
        has_minor(Graph(range(17)), "K4")


# cycles


def test_cycle_spectrum_examples(petersen):
    assert cycle_spectrum(cycle_graph(6), 6) == frozenset({6})
    assert cycle_spectrum(complete_graph(4), 4) == frozenset({3, 4})
    assert cycle_spectrum(petersen, 6) == frozenset({5, 6})


def test_cycle_spectrum_cap():
    with pytest.raises(GraphError):
        cycle_spectrum(cycle_graph(4), 5)


def test_two_alternating_cycle_examples():
    m = find_2_alternating_cycle(cycle_graph(4))
    assert m is not None and m.config == "ALT2CYCLE"
    assert find_2_alternating_cycle(complete_graph(4)) is None
    # antipodal chord in C6: remaining degree-2 vertices do not alternate
    assert find_2_alternating_cycle(cycle_graph(6).with_edge(0, 3)) is None


# degrees


def test_min_degree_sum_edge(petersen):
    eid, s = min_degree_sum_edge(complete_graph(4))
    assert s == 6
    assert min_degree_sum_edge(star_graph(5))[1] == 6
    assert min_degree_sum_edge(petersen)[1] == 6
    with pytest.raises(GraphError):
        min_degree_sum_edge(Graph([0]))


def test_degeneracy_examples():
    assert degeneracy_order(path_graph(6))[1] == 1
    assert degeneracy_order(cycle_graph(5))[1] == 2
    assert degeneracy_order(line_graph(complete_graph(4)))[1] == 4


def test_degeneracy_bounds_and_oracle():
    # brute-force over all elimination orders confirms the min-max back-degree
    g = line_graph(complete_graph(4))

    def back_degree(order):
        pos = {v: i for i, v in enumerate(order)}
        return max(
            sum(1 for w in g.neighbors(v) if pos[w] > pos[v]) for v in order
        )

    best = min(back_degree(p) for p in itertools.permutations(g.vertices))
    assert degeneracy_order(g)[1] == best == 4

    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        h = Graph(range(n), edges)
        assert degeneracy_order(h)[1] <= h.max_degree()


# chromatic index


def test_chromatic_index_examples():
    assert chromatic_index(cycle_graph(4)) == 2
    assert chromatic_index(cycle_graph(5)) == 3
    assert chromatic_index(complete_graph(4)) == 3


def test_chromatic_index_brute_oracle_k4():
    # K4: no proper 6-edge coloring with 2 colors, one with 3 exists
    g = complete_graph(4)
    lg = line_graph(g)

    def colorable(k):
        for assign in itertools.product(range(k), repeat=lg.n):
            cols = dict(zip(lg.vertices, assign))
            if all(cols[e.u] != cols[e.v] for e in lg.edges):
                return True
        return False

    assert not colorable(2) and colorable(3)


def test_chromatic_index_cap():
    with pytest.raises(GraphError):
        chromatic_index(complete_graph(7))
