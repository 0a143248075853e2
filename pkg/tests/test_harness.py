import json

import pytest

from groupchoose.graph6 import encode_graph6
from groupchoose.graphs import GraphError, complete_graph, cycle_graph
from groupchoose.generate import connected_graphs_up_to
from groupchoose.harness import (
    ResultCache,
    SurveyBounds,
    catalog_from_spec,
    run_claim,
    run_survey,
)
from groupchoose.solver import RefutedWithWitness


BOUNDS = SurveyBounds(max_order=5, budget=50_000, on_budget="prefix", seed=0)


def test_run_claim_cycle():
    rec = run_claim(cycle_graph(5), "delta-plus-one", BOUNDS)
    assert not rec.refuted()
    assert rec.verdict is not None


def test_unknown_claim_rejected():
    with pytest.raises(GraphError):
        run_claim(cycle_graph(3), "conjecture-zero", BOUNDS)


def test_delta3_claim_skips_large_degrees():
    rec = run_claim(complete_graph(5), "delta3", BOUNDS)
    assert rec.skipped


def test_chi_prime_claim_runs():
    rec = run_claim(complete_graph(4), "chi-prime-plus-one", BOUNDS)
    assert not rec.refuted()
    assert "chi-3" in rec.check


def test_survey_small_catalog_no_refutations():
    graphs = [g for g in connected_graphs_up_to(5) if g.max_degree() <= 3]
    summary = run_survey(graphs, "delta-plus-one", BOUNDS)
    assert summary.refuted == 0
    assert summary.total == len(graphs)


def test_survey_records_are_deterministic():
    graphs = list(connected_graphs_up_to(4))
    a = run_survey(graphs, "delta-plus-one", BOUNDS)
    b = run_survey(graphs, "delta-plus-one", BOUNDS)
    ja = [json.dumps(r.to_json(), sort_keys=True) for r in a.records]
    jb = [json.dumps(r.to_json(), sort_keys=True) for r in b.records]
    assert ja == jb


def test_record_embeds_reproducible_verdict():
    rec = run_claim(cycle_graph(4), "delta-plus-one", BOUNDS)
    data = rec.to_json()
    assert data["graph6"] == encode_graph6(cycle_graph(4))
    assert "elapsed_ms" not in data  # timing only with the explicit flag
    assert "elapsed_ms" in rec.to_json(include_timing=True)


def test_catalog_gen_spec():
    graphs = list(catalog_from_spec("gen:4"))
    assert len(graphs) == 1 + 1 + 2 + 6
    capped = list(catalog_from_spec("gen:5", max_delta=2))
    assert all(g.max_degree() <= 2 for g in capped)


def test_catalog_file_with_bad_line(tmp_path):
    path = tmp_path / "cat.g6"
    path.write_text("C~\nnot-a-graph\x7f\nD?{\n")
    items = list(catalog_from_spec(str(path)))
    assert sum(1 for x in items if isinstance(x, Exception)) == 1
    assert sum(1 for x in items if not isinstance(x, Exception)) == 2


def test_cache_skip_and_quarantine(tmp_path, capsys):
    path = tmp_path / "cache.jsonl"
    cache = ResultCache(path)
    graphs = list(connected_graphs_up_to(3))
    s1 = run_survey(graphs, "delta-plus-one", BOUNDS, cache=cache)
    assert s1.cached == 0
    cache2 = ResultCache(path)
    s2 = run_survey(graphs, "delta-plus-one", BOUNDS, cache=cache2)
    assert s2.cached == len(graphs)
    # corrupt line is quarantined with a warning, never silently skipped
    with path.open("a") as fh:
        fh.write("this is not json\n")
    cache3 = ResultCache(path)
    assert cache3.quarantined == 1
    assert "quarantined" in capsys.readouterr().err
    assert len(list(cache3.query(claim="delta-plus-one"))) == len(graphs)


def test_survey_halts_on_refutation():
    # even cycles are not edge-2-group choosable; force the bad claim by
    # running the k=2 check directly through a crafted record stream
    from groupchoose.solver import is_edge_k_group_choosable_bounded

    verdict = is_edge_k_group_choosable_bounded(cycle_graph(4), 2, 2)
    assert isinstance(verdict, RefutedWithWitness)
