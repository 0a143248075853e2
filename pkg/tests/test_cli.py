import json

from groupchoose.cli import main
from groupchoose.graph6 import encode_graph6
from groupchoose.graphs import cycle_graph, path_graph
from groupchoose.plane import embed_small, format_rotation_system


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def jlines(text):
    return [json.loads(line) for line in text.strip().splitlines() if line]


def test_chi_gl_cycle(capsys):
    code, out, _ = run_cli(capsys, "chi-gl", encode_graph6(cycle_graph(5)))
    assert code == 0
    data = jlines(out)[0]
    assert data["value"] == 3
    assert data["quantity"] == "group-choice-number"
    assert "2" in data["refuted_below"]


def test_chi_gl_edge_path(capsys):
    code, out, _ = run_cli(capsys, "chi-gl-edge", encode_graph6(path_graph(3)))
    assert code == 0
    assert jlines(out)[0]["value"] == 2


def test_detect_lemma_on_c6_rotation(tmp_path, capsys):
    pg = embed_small(cycle_graph(6))
    path = tmp_path / "c6.rot"
    path.write_text(format_rotation_system(pg))
    code, out, _ = run_cli(capsys, "detect", "--embedding", str(path), "--lemma", "outerplanar")
    assert code == 0
    data = jlines(out)[0]
    assert data["status"] == "found" and data["config"] == "OUTER2"


def test_detect_config_json_matches(capsys):
    code, out, _ = run_cli(capsys, "detect", encode_graph6(cycle_graph(4)), "--config", "ALT2CYCLE")
    assert code == 0
    lines = jlines(out)
    assert lines[-1]["matches"] == len(lines) - 1 >= 1


def test_detect_plane_config_without_embedding_names_flag(capsys):
    code, _, err = run_cli(capsys, "detect", encode_graph6(cycle_graph(4)), "--config", "G1")
    assert code == 2
    assert "--embedding" in err


def test_discharge_triangle(tmp_path, capsys):
    pg = embed_small(cycle_graph(3))
    path = tmp_path / "c3.rot"
    path.write_text(format_rotation_system(pg))
    code, out, _ = run_cli(capsys, "discharge", "--embedding", str(path))
    assert code == 0
    data = jlines(out)[0]
    assert data["total_initial"] == [-8, 1] and data["total_final"] == [-8, 1]


def test_reduce_tree_empty_kernel(capsys):
    code, out, _ = run_cli(capsys, "reduce", encode_graph6(path_graph(5)), "--l", "1")
    assert code == 0
    data = jlines(out)[0]
    assert data["kernel_edges"] == []
    assert len(data["peeled"]) == 4


def test_survey_cli_and_cache(tmp_path, capsys):
    cache = tmp_path / "cache.jsonl"
    args = [
        "survey", "--catalog", "gen:4", "--claim", "delta-plus-one",
        "--max-order", "5", "--cache", str(cache),
    ]
    code, out1, err1 = run_cli(capsys, *args)
    assert code == 0
    assert "refuted=0" in err1
    code, out2, err2 = run_cli(capsys, *args)
    assert code == 0
    assert "cached=10" in err2
    assert out2.strip() == ""  # everything skipped, no new records


def test_survey_cli_deterministic_output(capsys):
    args = ["survey", "--catalog", "gen:4", "--claim", "delta-plus-one", "--max-order", "5"]
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_bad_graph6_is_an_error(capsys):
    code, _, err = run_cli(capsys, "chi-gl", "not-a-graph\x7f")
    assert code != 0
