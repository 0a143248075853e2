import pytest

from groupchoose.graph6 import Graph6Error, decode_graph6, encode_graph6, iter_graph6_lines
from groupchoose.graphs import Graph, star_graph
from groupchoose.generate import are_isomorphic, generate_connected_graphs


def test_decode_five_vertex_star():
    g = decode_graph6("D?{")
    assert g.n == 5
    assert are_isomorphic(g, star_graph(4))
    assert encode_graph6(g) == "D?{"


def test_single_vertex_base_case():
    assert encode_graph6(Graph([0])) == "@"
    assert decode_graph6("@").n == 1


def test_non_canonical_padding_rejected():
    with pytest.raises(Graph6Error):
        decode_graph6("D?~")


def test_malformed_inputs_carry_offsets():
    with pytest.raises(Graph6Error) as exc:
        decode_graph6("D?")  # truncated bit bytes
    assert exc.value.offset is not None
    with pytest.raises(Graph6Error):
        decode_graph6("")
    with pytest.raises(Graph6Error):
        decode_graph6("~???")  # big-size tier unsupported


def test_roundtrip_all_graphs_up_to_5():
    for n in range(1, 6):
        for g in generate_connected_graphs(n):
            s = encode_graph6(g)
            h = decode_graph6(s)
            assert h.n == g.n and h.m == g.m
            assert {(e.u, e.v) for e in h.edges} == {(e.u, e.v) for e in g.edges}
            assert encode_graph6(h) == s


def test_iter_graph6_lines_reports_bad_lines():
    lines = ["D?{", "", "# comment", "not-a-graph\x7f", "@"]
    out = list(iter_graph6_lines(lines))
    assert len(out) == 3
    assert isinstance(out[0][1], Graph)
    assert isinstance(out[1][1], Graph6Error)
    assert out[2][1].n == 1
