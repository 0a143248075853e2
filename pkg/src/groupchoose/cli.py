"""Command-line frontend.

Subcommands: survey, chi-gl, chi-gl-edge, detect, discharge, reduce.
Inputs are graph6 strings/files and rotation-system files; output is
line-delimited JSON (deterministic for fixed inputs, bounds and seed;
timings are emitted only with --timings).  Exit code 0 means no anomaly.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .detectors import CATALOG, LEMMAS, find_config, verify_unavoidability
from .discharge import verify_discharging, discharge_pipeline, MatchingError
from .graph6 import decode_graph6
from .graphs import Graph, GraphError
from .harness import (
    CLAIMS,
    ResultCache,
    SurveyBounds,
    catalog_from_spec,
    run_survey,
)
from .plane import parse_rotation_system, PlanarityError, RotationParseError
from .solver import (
    edge_group_choice_number_bounded,
    group_choice_number_bounded,
    kernelize_low_degree,
)


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _load_graph(args) -> Graph:
    if args.graph6:
        return decode_graph6(args.graph6)
    if args.input:
        text = Path(args.input).read_text().strip().splitlines()
        for line in text:
            line = line.strip()
            if line and not line.startswith("#"):
                return decode_graph6(line)
        raise GraphError(f"no graph6 line found in {args.input}")
    raise GraphError("supply a graph via positional graph6 or --input FILE")


def _load_embedding(args, flag: str = "--embedding"):
    if not getattr(args, "embedding", None):
        raise GraphError(f"this check needs a rotation-system file; pass {flag} FILE")
    return parse_rotation_system(Path(args.embedding).read_text())


def _parse_orders(text):
    if not text:
        return None
    try:
        return tuple(sorted({int(tok) for tok in text.replace(",", " ").split()}))
    except ValueError:
        raise GraphError(f"cannot parse --orders {text!r}; expected e.g. 4,5") from None


def _cmd_survey(args) -> int:
    bounds = SurveyBounds(
        max_order=args.max_order,
        orders=_parse_orders(args.orders),
        budget=args.budget,
        on_budget=args.on_budget,
        seed=args.seed,
    )
    cache = ResultCache(Path(args.cache)) if args.cache else None
    graphs = catalog_from_spec(args.catalog, max_delta=args.max_delta)
    summary = run_survey(graphs, args.claim, bounds, cache=cache)
    for rec in summary.records:
        _emit(rec.to_json(include_timing=args.timings))
    if not args.json:
        print(
            f"survey claim={args.claim} total={summary.total} refuted={summary.refuted} "
            f"skipped={summary.skipped} cached={summary.cached} errors={summary.errors}",
            file=sys.stderr,
        )
    return 1 if (summary.refuted or summary.errors) else 0


def _cmd_chi_gl(args, edge: bool) -> int:
    g = _load_graph(args)
    fn = edge_group_choice_number_bounded if edge else group_choice_number_bounded
    try:
        result = fn(
            g,
            k_max=args.k_max,
            order_margin=args.order_margin,
            budget=args.budget,
            on_budget=args.on_budget,
            seed=args.seed,
        )
    except Exception as exc:
        _emit({"error": f"{type(exc).__name__}: {exc}"})
        return 1
    out = result.to_json()
    out["quantity"] = "edge-group-choice-number" if edge else "group-choice-number"
    _emit(out)
    return 0


def _cmd_detect(args) -> int:
    from .detectors import DetectorError

    if args.embedding:
        host = _load_embedding(args)
    else:
        host = _load_graph(args)
    anomalies = 0
    try:
        if args.config:
            if args.config not in CATALOG:
                raise GraphError(f"unknown config {args.config!r}; known: {sorted(CATALOG)}")
            matches = find_config(host, args.config)
            for m in matches:
                _emit(m.to_json())
            _emit({"config": args.config, "matches": len(matches)})
        elif args.lemma:
            report = verify_unavoidability(host, args.lemma)
            _emit(report.to_json())
            if report.status == "counterexample":
                anomalies += 1
        else:
            raise GraphError("pass --config NAME or --lemma NAME")
    except DetectorError as exc:
        if "plane" in str(exc):
            raise GraphError(f"{exc}; pass --embedding FILE") from exc
        raise
    return 1 if anomalies else 0


def _cmd_discharge(args) -> int:
    pg = _load_embedding(args)
    if args.check:
        report = verify_discharging(pg)
        _emit(report.to_json())
        return 1 if report.status == "counterexample" else 0
    try:
        ledger = discharge_pipeline(pg)
    except MatchingError as exc:
        _emit({"error": str(exc), "violator": sorted(exc.violator)})
        return 1
    out = ledger.to_json()
    out["total_initial"] = [ledger.total_initial().numerator, ledger.total_initial().denominator]
    out["total_final"] = [ledger.total_final().numerator, ledger.total_final().denominator]
    _emit(out)
    return 0 if ledger.total_initial() == ledger.total_final() else 1


def _cmd_reduce(args) -> int:
    g = _load_graph(args)
    result = kernelize_low_degree(g, args.l)
    _emit(result.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="groupchoose",
        description="exact verification toolkit for group choosability of graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_budget_flags(sp):
        sp.add_argument("--budget", type=int, default=200_000, help="instance budget per group")
        sp.add_argument(
            "--on-budget",
            choices=("error", "prefix", "sample"),
            default="prefix",
            help="what to do when a search space exceeds the budget",
        )
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled exploration")

    sp = sub.add_parser("survey", help="run a claim over a graph catalog")
    sp.add_argument("--catalog", required=True, help="graph6 file or gen:N for all connected graphs up to N vertices")
    sp.add_argument("--claim", required=True, choices=CLAIMS)
    sp.add_argument("--max-order", type=int, default=None, help="cap on group orders (default: k+2)")
    sp.add_argument("--orders", default=None, help="explicit group orders, e.g. 4,5 (overrides --max-order)")
    sp.add_argument("--max-delta", type=int, default=None, help="skip graphs with larger max degree")
    sp.add_argument("--cache", default=None, help="append-only JSONL cache for resuming")
    sp.add_argument("--timings", action="store_true", help="include elapsed_ms in records")
    sp.add_argument("--json", action="store_true", help="suppress the stderr summary; records only")
    add_budget_flags(sp)
    sp.set_defaults(fn=_cmd_survey)

    for name, edge in (("chi-gl", False), ("chi-gl-edge", True)):
        sp = sub.add_parser(name, help=f"bounded {'edge-' if edge else ''}group choice number")
        sp.add_argument("graph6", nargs="?", default=None)
        sp.add_argument("--input", default=None, help="graph6 file (first graph is used)")
        sp.add_argument("--k-max", type=int, default=None)
        sp.add_argument("--order-margin", type=int, default=2)
        add_budget_flags(sp)
        sp.set_defaults(fn=lambda a, e=edge: _cmd_chi_gl(a, e))

    sp = sub.add_parser("detect", help="find configurations or check a lemma's unavoidable set")
    sp.add_argument("graph6", nargs="?", default=None)
    sp.add_argument("--input", default=None, help="graph6 file")
    sp.add_argument("--embedding", default=None, help="rotation-system file")
    sp.add_argument("--config", default=None, help=f"configuration name, one of {sorted(CATALOG)}")
    sp.add_argument("--lemma", default=None, help=f"lemma name, one of {sorted(LEMMAS)}")
    sp.set_defaults(fn=_cmd_detect)

    sp = sub.add_parser("discharge", help="apply the charge rules to an embedding")
    sp.add_argument("--embedding", required=True, help="rotation-system file")
    sp.add_argument("--check", action="store_true", help="run the full hypothesis/config pipeline")
    sp.set_defaults(fn=_cmd_discharge)

    sp = sub.add_parser("reduce", help="peel edges at low-degree vertices with a certificate")
    sp.add_argument("graph6", nargs="?", default=None)
    sp.add_argument("--input", default=None, help="graph6 file")
    sp.add_argument("--l", type=int, default=1, help="slack in the max-degree bound")
    sp.set_defaults(fn=_cmd_reduce)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GraphError, PlanarityError, RotationParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
