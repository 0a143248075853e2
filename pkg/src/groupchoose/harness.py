"""Catalog surveys: run a bounded claim check over a stream of graphs,
persist self-contained records, and resume from an append-only cache.

A record embeds the graph (graph6), the claim and bounds, and the verdict
with any witness, so re-running the named check on the embedded data
reproduces the verdict.  Output is deterministic line-delimited JSON.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .graph6 import decode_graph6, encode_graph6, Graph6Error
from .graphs import Graph, GraphError, chromatic_index, line_graph
from .generate import connected_graphs_up_to
from .solver import (
    HoldsByTheorem,
    RefutedWithWitness,
    Verdict,
    is_k_group_choosable_bounded,
    kernelize_low_degree,
)

CLAIMS = ("delta-plus-one", "chi-prime-plus-one", "delta3")


@dataclass(frozen=True)
class SurveyBounds:
    max_order: Optional[int] = None  # cap on group orders; default k+2 per graph
    orders: Optional[tuple[int, ...]] = None  # explicit order set, overrides the cap
    budget: int = 200_000
    on_budget: str = "prefix"
    seed: int = 0

    def key(self) -> str:
        return json.dumps(
            {
                "max_order": self.max_order,
                "orders": list(self.orders) if self.orders else None,
                "budget": self.budget,
                "on_budget": self.on_budget,
                "seed": self.seed,
            },
            sort_keys=True,
        )

    def to_json(self) -> dict:
        return json.loads(self.key())


@dataclass
class SurveyRecord:
    graph6: str
    n: int
    m: int
    max_degree: int
    min_degree: int
    claim: str
    check: str
    verdict: Optional[Verdict]
    bounds: SurveyBounds
    skipped: Optional[str] = None
    error: Optional[str] = None
    elapsed_ms: Optional[float] = None
    cached: bool = False

    def refuted(self) -> bool:
        return isinstance(self.verdict, RefutedWithWitness)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
            "claim": self.claim,
            "check": self.check,
            "bounds": self.bounds.to_json(),
            "cached": self.cached,
        }
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_json()
        if self.skipped:
            out["skipped"] = self.skipped
        if self.error:
            out["error"] = self.error
        if include_timing and self.elapsed_ms is not None:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _check_edge_bound(g: Graph, k: int, bounds: SurveyBounds) -> tuple[str, Verdict]:
    """Bounded check of "the line graph is k-group choosable", routed
    through low-degree edge peeling.

    Peeling is sound in both directions for bounds of the form
    maxdeg(g) + slack: an upper bound on the kernel lifts to g by greedy
    restoration, and a refutation on the kernel's line graph extends to
    the full line graph because it is an induced subgraph.
    """
    kernel = kernelize_low_degree(g, max(1, k - g.max_degree())).kernel
    if kernel.m == 0:
        return "peeled-to-empty", HoldsByTheorem("peeled-to-empty")
    lg = line_graph(kernel)
    max_order = bounds.max_order if bounds.max_order is not None else k + 2
    verdict = is_k_group_choosable_bounded(
        lg,
        k,
        max(max_order, k),
        orders=bounds.orders,
        budget=bounds.budget,
        on_budget=bounds.on_budget,
        seed=bounds.seed,
    )
    return f"edge-choosable-at-{k}", verdict


def run_claim(g: Graph, claim: str, bounds: SurveyBounds) -> SurveyRecord:
    if claim not in CLAIMS:
        raise GraphError(f"unknown claim {claim!r}; known: {CLAIMS}")
    started = time.perf_counter()
    base = dict(
        graph6=encode_graph6(g),
        n=g.n,
        m=g.m,
        max_degree=g.max_degree(),
        min_degree=g.min_degree(),
        claim=claim,
        bounds=bounds,
    )
    try:
        if claim == "delta3" and g.max_degree() > 3:
            rec = SurveyRecord(
                **base, check="max-degree-filter", verdict=None, skipped="max degree above 3"
            )
        elif g.m == 0:
            rec = SurveyRecord(**base, check="no-edges", verdict=HoldsByTheorem("no-edges"))
        elif claim == "chi-prime-plus-one":
            chi = chromatic_index(g)
            check, verdict = _check_edge_bound(g, chi + 1, bounds)
            rec = SurveyRecord(**base, check=f"{check}-chi-{chi}", verdict=verdict)
        else:  # delta-plus-one, or delta3 within its degree filter
            check, verdict = _check_edge_bound(g, g.max_degree() + 1, bounds)
            rec = SurveyRecord(**base, check=check, verdict=verdict)
    except Exception as exc:  # per-record failure keeps the survey going
        rec = SurveyRecord(**base, check="error", verdict=None, error=f"{type(exc).__name__}: {exc}")
    rec.elapsed_ms = (time.perf_counter() - started) * 1000.0
    return rec


# ---------------------------------------------------------------------------
# catalog sources


def catalog_from_spec(spec: str, max_delta: Optional[int] = None) -> Iterable[Graph]:
    """`gen:N` streams all connected graphs on 1..N vertices; anything else
    is a path to a graph6 file (one graph per line)."""
    if spec.startswith("gen:"):
        n = int(spec.split(":", 1)[1])
        for g in connected_graphs_up_to(n):
            if max_delta is None or g.max_degree() <= max_delta:
                yield g
        return
    path = Path(spec)
    if not path.exists():
        raise GraphError(f"catalog file not found: {spec}")
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                g = decode_graph6(line)
            except Graph6Error as exc:
                yield Graph6Error(f"line {lineno}: {exc}")
                continue
            if max_delta is None or g.max_degree() <= max_delta:
                yield g


# ---------------------------------------------------------------------------
# append-only result cache


class ResultCache:
    """JSONL cache keyed by (graph6, claim, bounds); corrupt lines are
    quarantined with a warning, never silently dropped."""

    def __init__(self, path: Optional[Path]):
        self.path = Path(path) if path else None
        self.keys: set[tuple[str, str, str]] = set()
        self.records: list[dict] = []
        self.quarantined: int = 0
        if self.path and self.path.exists():
            with self.path.open() as fh:
                for lineno, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                        key = (rec["graph6"], rec["claim"], json.dumps(rec["bounds"], sort_keys=True))
                    except (json.JSONDecodeError, KeyError, TypeError):
                        self.quarantined += 1
                        print(
                            f"warning: quarantined corrupt cache line {lineno} in {self.path}",
                            file=sys.stderr,
                        )
                        continue
                    self.keys.add(key)
                    self.records.append(rec)

    def seen(self, graph6: str, claim: str, bounds: SurveyBounds) -> bool:
        return (graph6, claim, bounds.key()) in self.keys

    def append(self, record: SurveyRecord) -> None:
        if self.path is None:
            return
        rec = record.to_json()
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self.keys.add((record.graph6, record.claim, record.bounds.key()))

    def query(self, claim: Optional[str] = None):
        for rec in self.records:
            if claim is None or rec.get("claim") == claim:
                yield rec


@dataclass
class SurveySummary:
    total: int = 0
    refuted: int = 0
    skipped: int = 0
    cached: int = 0
    errors: int = 0
    records: list[SurveyRecord] = field(default_factory=list)


def run_survey(
    graphs: Iterable,
    claim: str,
    bounds: SurveyBounds,
    cache: Optional[ResultCache] = None,
    stop_on_refutation: bool = True,
    keep_records: bool = True,
) -> SurveySummary:
    """Run one claim over a graph stream; any refutation halts the survey
    (it is a potential counterexample bundle, the highest-priority output)."""
    summary = SurveySummary()
    for item in graphs:
        if isinstance(item, Exception):
            summary.errors += 1
            summary.total += 1
            continue
        g: Graph = item
        g6 = encode_graph6(g)
        if cache is not None and cache.seen(g6, claim, bounds):
            summary.cached += 1
            summary.total += 1
            continue
        rec = run_claim(g, claim, bounds)
        summary.total += 1
        if keep_records:
            summary.records.append(rec)
        if cache is not None:
            cache.append(rec)
        if rec.skipped:
            summary.skipped += 1
        if rec.error:
            summary.errors += 1
        if rec.refuted():
            summary.refuted += 1
            if stop_on_refutation:
                break
    return summary
