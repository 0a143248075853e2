import pytest

from groupchoose.detectors import (
    CATALOG,
    LEMMAS,
    DetectorError,
    LemmaSpec,
    find_config,
    find_config_bruteforce,
    validate_match,
    verify_unavoidability,
)
from groupchoose.graphs import Graph, complete_graph, cycle_graph, path_graph, star_graph
from groupchoose.plane import embed_small, random_plane_graph


def g1_host():
    """Degree-4 hub with two triangles, outer degrees raised to exactly 4."""
    core = [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4), (1, 2)]
    extra = [(1, 5), (2, 5), (3, 6), (4, 6), (1, 3), (2, 4)]
    return embed_small(Graph(range(7), core + extra))


def test_catalog_lookups():
    assert "G7" in CATALOG and CATALOG["G7"].kind == "faces"
    g7 = CATALOG["G7"]
    assert len(g7.vertex_names()) == 5 and g7.all_distinct
    g2 = CATALOG["G2"]
    assert len(g2.face_templates) == 4
    assert "NO_SUCH_CONFIG" not in CATALOG


def test_edge_sum_on_k4():
    matches = find_config(complete_graph(4), "EDGE_SUM_7")
    assert len(matches) == 6  # every edge, sum 6


def test_alt4cycle_on_c4_none():
    assert find_config(cycle_graph(4), "ALT4CYCLE_6") == []


def test_g1_identity_match():
    pg = g1_host()
    matches = find_config(pg, "G1")
    assert matches
    m = matches[0]
    assert m.vertex_map["v"] == 0
    assert sorted(m.vertex_map[k] for k in ("v1", "v2", "v3", "v4")) == [1, 2, 3, 4]
    assert validate_match(pg, m)


def test_plane_config_needs_embedding():
    with pytest.raises(DetectorError):
        find_config(complete_graph(4), "G1")


def test_alt2cycle_detector_matches_helper():
    # every vertex of C4 has degree 2, so both alternation classes match
    ms = find_config(cycle_graph(4), "ALT2CYCLE")
    assert len(ms) == 2
    assert all(validate_match(cycle_graph(4), m) for m in ms)
    assert find_config(complete_graph(4), "ALT2CYCLE") == []


def test_validate_rejects_corrupted_match():
    ms = find_config(complete_graph(4), "EDGE_SUM_7")
    broken = ms[0]
    tampered = type(broken)(
        config=broken.config, vertex_map={"x": 0, "y": 0}, face_map={}
    )
    assert not validate_match(complete_graph(4), tampered)


def test_detector_oracle_equivalence_sample():
    for seed in range(12):
        pg = random_plane_graph(500 + seed, 5 + seed % 7, (seed * 3) % 8)
        for name, spec in CATALOG.items():
            host = pg if spec.needs_plane else pg.graph
            a = {m.canonical() for m in find_config(host, spec)}
            b = {m.canonical() for m in find_config_bruteforce(host, spec)}
            assert a == b, f"{name} disagrees on seed {500 + seed}"


def test_every_match_revalidates():
    for seed in range(8):
        pg = random_plane_graph(800 + seed, 6 + seed % 5, seed % 7)
        for name, spec in CATALOG.items():
            host = pg if spec.needs_plane else pg.graph
            for m in find_config(host, spec):
                assert validate_match(host, m), f"{name} produced an invalid match"


def test_unavoidability_examples():
    k4pg = embed_small(complete_graph(4))
    report = verify_unavoidability(k4pg, "planar-min-degree-3")
    assert report.status == "found" and report.config == "EDGE_SUM_13"

    c6pg = embed_small(cycle_graph(6))
    report = verify_unavoidability(c6pg, "outerplanar")
    assert report.status == "found" and report.config == "OUTER2"

    report = verify_unavoidability(k4pg, "outerplanar")
    assert report.status == "skipped"

    with pytest.raises(DetectorError):
        verify_unavoidability(k4pg, "no-such-lemma")


def test_unavoidability_star_hits_leaf_edge():
    pg = embed_small(star_graph(3))
    report = verify_unavoidability(pg, "outerplanar")
    assert report.status == "found" and report.config == "OUTER1"


def test_counterexample_bundle_machinery():
    # a deliberately false bundle: claim every path carries a degree-2+2 edge
    fake = LemmaSpec(
        name="fake",
        doc="test-only falsehood",
        configs=("OUTER2",),
        hypothesis=lambda g: None,
    )
    LEMMAS["fake"] = fake
    try:
        pg = embed_small(path_graph(2))  # single edge: degrees 1,1
        report = verify_unavoidability(pg, "fake")
        assert report.status == "counterexample"
        assert report.bundle and "graph6" in report.bundle and "rotation" in report.bundle
    finally:
        del LEMMAS["fake"]


def test_delta_resolved_configs():
    # EVEN_3DELTA_CYCLE: alternate degrees 3 and maxdeg
    g = Graph(
        range(8),
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (0, 5), (2, 6), (2, 7), (4, 5), (6, 7)],
    )
    # degrees: 0 and 2 have degree 4 = delta; 1, 3 have degree 2 -> no match
    assert find_config(g, "EVEN_3DELTA_CYCLE") == []
    h = Graph(
        range(8),
        [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (3, 5), (0, 6), (0, 7), (2, 6), (2, 7)],
    )
    # cycle 0-1-2-3 with d(1)=d(3)=3 and d(0)=d(2)=4=delta
    ms = find_config(h, "EVEN_3DELTA_CYCLE")
    assert len(ms) == 1


def test_lemma_registry_hypotheses():
    pg = embed_small(cycle_graph(6))
    report = verify_unavoidability(pg, "no-4-cycles")
    assert report.status == "skipped"  # min degree 2 < 3
    report = verify_unavoidability(pg, "no-5-or-6-cycles")
    assert report.status in ("found", "skipped")
