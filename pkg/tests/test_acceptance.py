"""Release acceptance suite: one test per criterion, each printing a
PASS/FAIL line with its measured numbers (run pytest with -s to see them
inline)."""

import itertools
import random
import time
from fractions import Fraction

from groupchoose.detectors import CATALOG, find_config, find_config_bruteforce
from groupchoose.discharge import discharge_pipeline
from groupchoose.generate import connected_graphs_up_to, generate_connected_graphs
from groupchoose.graph6 import decode_graph6, encode_graph6
from groupchoose.graphs import (
    Graph,
    blocks_all_complete_or_cycle,
    complete_graph,
    cycle_graph,
    line_graph,
    path_graph,
    star_graph,
)
from groupchoose.groups import enumerate_abelian_groups
from groupchoose.harness import SurveyBounds, run_survey
from groupchoose.plane import (
    PlaneGraph,
    embed_small,
    has_outerplanar_embedding,
    is_outerplanar,
    random_plane_graph,
)
from groupchoose.solver import (
    ListAssignment,
    RefutedWithWitness,
    ShiftAssignment,
    VerifiedUpToBound,
    check_reducible,
    edge_group_choice_number_bounded,
    find_coloring,
    group_choice_number_bounded,
    is_D_group_choosable_bounded,
    is_edge_k_group_choosable_bounded,
    normalize_shift,
)


def report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


# -- 1: path and cycle values -------------------------------------------------


def test_criterion_1_path_cycle_values():
    started = time.perf_counter()
    for length in range(1, 6):
        r = group_choice_number_bounded(path_graph(length + 1), order_margin=3)
        assert r.value == 2, f"path of length {length}"
        assert isinstance(r.refutations[1], RefutedWithWitness)
    for n in range(3, 7):
        r = group_choice_number_bounded(cycle_graph(n), order_margin=2)
        assert r.value == 3, f"cycle C{n}"
        w = r.refutations[2]
        assert w.revalidated and w.order <= 5
        re = edge_group_choice_number_bounded(cycle_graph(n), order_margin=2)
        assert re.value == 3
        assert re.refutations[2].order <= 5
    elapsed = time.perf_counter() - started
    report(
        "criterion-1 path/cycle choice numbers",
        elapsed < 30.0,
        f"paths=2, cycles=3 (vertex and edge), {elapsed:.1f}s < 30s",
    )


# -- 2: even cycles are not edge-2-group choosable ---------------------------


def test_criterion_2_even_cycle_witnesses():
    times = []
    for n in (4, 6):
        started = time.perf_counter()
        verdict = is_edge_k_group_choosable_bounded(cycle_graph(n), 2, 2)
        elapsed = time.perf_counter() - started
        times.append(elapsed)
        assert isinstance(verdict, RefutedWithWitness)
        assert verdict.group.order == 2
        lg = line_graph(cycle_graph(n))
        assert find_coloring(lg, verdict.group, verdict.lists, verdict.shift) is None
        assert elapsed < 1.0, f"C{n} witness took {elapsed:.2f}s"
    report(
        "criterion-2 even-cycle edge witnesses",
        True,
        f"l(C4) in {times[0]*1000:.0f}ms, l(C6) in {times[1]*1000:.0f}ms, both re-validated",
    )


# -- 3: max degree 3 survey ---------------------------------------------------


def test_criterion_3_delta3_survey():
    started = time.perf_counter()
    graphs = [g for g in connected_graphs_up_to(6) if g.max_degree() <= 3]
    bounds = SurveyBounds(max_order=5, budget=200_000, on_budget="prefix", seed=0)
    summary = run_survey(graphs, "delta-plus-one", bounds)
    elapsed = time.perf_counter() - started
    report(
        "criterion-3 survey n<=6 maxdeg<=3",
        summary.refuted == 0 and summary.errors == 0 and elapsed < 600,
        f"{summary.total} graphs, 0 refutations, {elapsed:.1f}s < 600s",
    )


# -- 4: reducibility of the two-triangle gadget's line graph ------------------


def test_criterion_4_gadget_line_graph_reducible(two_triangle_hub):
    started = time.perf_counter()
    lg = line_graph(two_triangle_hub)
    sizes = {0: 3, 1: 4, 2: 4, 3: 4, 4: 2, 5: 1}
    result = check_reducible(lg, sizes, {4})
    elapsed = time.perf_counter() - started
    groups = [str(a) for a in enumerate_abelian_groups(4)]
    counts = result.instances_per_group
    ok = (
        isinstance(result.verdict, VerifiedUpToBound)
        and sorted(counts) == sorted(groups)
        and all(c == 73_728 for c in counts.values())  # 72 anchored tuples x 4^5 twists
        and elapsed < 900
    )
    report(
        "criterion-4 gadget reducibility at order 4",
        ok,
        f"verified for {groups}, instance counts {counts}, {elapsed:.1f}s < 900s",
    )


# -- 5: degree-list cross-check against the block characterization ------------


def test_criterion_5_degree_list_cross_check():
    started = time.perf_counter()
    checked = refuted = 0
    for g in connected_graphs_up_to(6):
        predicted_refutable = blocks_all_complete_or_cycle(g)
        res = is_D_group_choosable_bounded(
            g, max_order=max(g.max_degree(), 2) + 2, budget=15_000, on_budget="prefix"
        )
        checked += 1
        if predicted_refutable:
            assert isinstance(res.verdict, RefutedWithWitness), (
                f"release blocker: no witness for {encode_graph6(g)}"
            )
            assert res.verdict.order <= max(g.max_degree(), 2) + 1, (
                f"witness beyond maxdeg+1 for {encode_graph6(g)}"
            )
            assert res.verdict.revalidated
            refuted += 1
        else:
            assert not isinstance(res.verdict, RefutedWithWitness), (
                f"release blocker: false refutation for {encode_graph6(g)}"
            )
        assert res.agrees
    elapsed = time.perf_counter() - started
    report(
        "criterion-5 degree-list cross-check n<=6",
        True,
        f"{checked} graphs, {refuted} refuted with witnesses, 0 disagreements, {elapsed:.0f}s",
    )


# -- 6: the line graph of K4 is degree-list colorable --------------------------


def test_criterion_6_line_k4_degree_lists():
    started = time.perf_counter()
    lg = line_graph(complete_graph(4))
    rank = lg.m - lg.n + 1
    assert rank == 7 and 4**rank == 16_384
    res = is_D_group_choosable_bounded(lg, max_order=5, budget=400_000)
    elapsed = time.perf_counter() - started
    v = res.verdict
    ok = (
        isinstance(v, VerifiedUpToBound)
        and v.max_order_checked == 5
        and v.instances_checked == 2 * 16_384 + 5**7  # exhaustive at orders 4 and 5
        and v.mode == "tensor"
        and res.agrees
        and elapsed < 120
    )
    report(
        "criterion-6 l(K4) degree-list colorable",
        ok,
        f"verified orders 4-5, {v.instances_checked} shifts (16384 per order-4 group), "
        f"{elapsed:.0f}s < 120s",
    )


# -- 7: discharge conservation -------------------------------------------------


def _cycle_embedding(n: int) -> PlaneGraph:
    return PlaneGraph(cycle_graph(n), {i: ((i - 1) % n, (i + 1) % n) for i in range(n)})


def _fixtures():
    b = Graph(range(5), [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    wheel5 = Graph(range(6), [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
    prism = Graph(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    cube = Graph(
        range(8),
        [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7), (0, 4), (1, 5), (2, 6), (3, 7)],
    )
    tri_pendant = Graph(range(4), [(0, 1), (1, 2), (0, 2), (0, 3)])
    g1_host = Graph(
        range(7),
        [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4), (1, 2), (1, 5), (2, 5), (3, 6), (4, 6), (1, 3), (2, 4)],
    )
    fixed = [
        embed_small(path_graph(2)),
        embed_small(path_graph(3)),
        embed_small(path_graph(5)),
        embed_small(star_graph(3)),
        embed_small(Graph(range(7), [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])),
        embed_small(cycle_graph(3)),
        embed_small(cycle_graph(4)),
        embed_small(cycle_graph(6)),
        _cycle_embedding(8),
        _cycle_embedding(16),
        embed_small(complete_graph(4)),
        embed_small(b),
        embed_small(complete_graph(4).without_edge(0)),
        embed_small(tri_pendant),
        embed_small(wheel5),
        embed_small(prism),
        embed_small(cube),
        embed_small(g1_host),
        embed_small(cycle_graph(6).with_edge(0, 3)),
        embed_small(line_graph(complete_graph(4))),
    ]
    randoms = [random_plane_graph(s, n, e) for s, n, e in ((6, 6, 2), (8, 8, 3), (9, 9, 4), (10, 10, 2))]
    return fixed + randoms


def test_criterion_7_discharge_conservation():
    fixtures = _fixtures()
    assert len(fixtures) >= 20
    for pg in fixtures:
        ledger = discharge_pipeline(pg)
        assert ledger.total_initial() == ledger.total_final()
        if pg.graph.is_connected():
            assert ledger.total_initial() == Fraction(-8)
        assert ledger.replay() == ledger.final
    report(
        "criterion-7 discharge conservation",
        True,
        f"{len(fixtures)} embeddings, exact conservation and -8 totals, replay bit-exact",
    )


# -- 8: detector equals the enumeration oracle --------------------------------


def test_criterion_8_detector_oracle_equivalence():
    started = time.perf_counter()
    hosts = 0
    checks = 0
    for seed in range(200):
        n = 4 + (seed % 9)
        extra = (seed * 7) % n
        pg = random_plane_graph(3000 + seed, n, extra)
        assert pg.graph.n <= 12
        hosts += 1
        for name, spec in CATALOG.items():
            host = pg if spec.needs_plane else pg.graph
            a = {m.canonical() for m in find_config(host, spec)}
            b = {m.canonical() for m in find_config_bruteforce(host, spec)}
            checks += 1
            assert a == b, f"config {name} disagrees with the oracle on seed {3000 + seed}"
    elapsed = time.perf_counter() - started
    report(
        "criterion-8 detector-oracle equivalence",
        True,
        f"{hosts} hosts x {len(CATALOG)} configs = {checks} comparisons, {elapsed:.0f}s",
    )


# -- 9: outerplanarity agreement ----------------------------------------------


def test_criterion_9_outerplanarity_agreement():
    started = time.perf_counter()
    checked = 0
    for g in connected_graphs_up_to(7):
        assert is_outerplanar(g) == has_outerplanar_embedding(g), encode_graph6(g)
        checked += 1
    elapsed = time.perf_counter() - started
    report(
        "criterion-9 outerplanarity agreement n<=7",
        True,
        f"{checked} connected graphs, minor test == embedding criterion, {elapsed:.0f}s",
    )


# -- 10: normalization soundness ----------------------------------------------


def test_criterion_10_normalization_soundness():
    rng = random.Random(424242)
    agree = 0
    for _ in range(1000):
        n = rng.randint(2, 6)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        for u, v in itertools.combinations(range(n), 2):
            if rng.random() < 0.3 and not any({u, v} == {a, b} for a, b in edges):
                edges.append((u, v))
        g = Graph(range(n), edges)
        order = rng.randint(2, 5)
        group = rng.choice(enumerate_abelian_groups(order))
        els = group.elements()
        lists = ListAssignment(
            g, group, {v: rng.sample(els, rng.randint(1, order)) for v in g.vertices}
        )
        shift = ShiftAssignment(g, group, {e.id: els[rng.randrange(order)] for e in g.edges})
        before = find_coloring(g, group, lists, shift) is not None
        nshift, t = normalize_shift(g, group, shift)
        after = find_coloring(g, group, lists.translated(t), nshift) is not None
        assert before == after
        agree += 1
    report("criterion-10 normalization soundness", agree == 1000, f"{agree}/1000 instances agree")


# -- 11: graph6 round trips and generation counts ------------------------------


def test_criterion_11_graph6_roundtrip_and_counts():
    counts = {}
    for n in range(1, 8):
        seen = 0
        for g in generate_connected_graphs(n):
            s = encode_graph6(g)
            h = decode_graph6(s)
            assert {(e.u, e.v) for e in h.edges} == {(e.u, e.v) for e in g.edges}
            assert encode_graph6(h) == s
            seen += 1
        counts[n] = seen
    ok = counts[3] == 2 and counts[4] == 6 and counts[5] == 21
    report(
        "criterion-11 graph6 roundtrip + generation counts",
        ok,
        f"roundtrip identity for {sum(counts.values())} graphs, counts n=3..5: "
        f"{counts[3]}, {counts[4]}, {counts[5]} (also n=6: {counts[6]}, n=7: {counts[7]})",
    )
