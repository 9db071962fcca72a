"""Command-line front end: replay sessions, run property checks, serve HTTP.

Exit codes: 0 success, 1 a requested outcome did not hold (alerts under
--strict, or a check that did not come out as wanted), 2 usage or input
errors. For the ``non_monotonicity`` check "as wanted" means a witness
was found; for every other property it means holds_up_to_bound.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .scenario import (
    ScenarioError,
    UnknownPropertyError,
    bundled_names,
    resolve_scenario,
    run_check,
    verdict_ok,
    verdict_to_json,
)
from .session import replay, transcript_text
from .space import GridTooLargeError


def _parse_queries(raw: str | None, scenario):
    if raw is None:
        return scenario.queries
    return tuple(scenario.space.check_point(q) for q in json.loads(raw))


def _cmd_run(args) -> int:
    scenario = resolve_scenario(args.scenario)
    queries = _parse_queries(args.queries, scenario)
    reports = replay(scenario, queries, entailment=args.entailment)

    out = Path(args.out) if args.out else Path(f"{scenario.name}.transcript.jsonl")
    out.write_text(transcript_text(reports), encoding="utf-8")

    rel = args.entailment or scenario.entailment
    print(f"scenario {scenario.name} ({rel}), {len(reports)} steps -> {out}")
    print(f"{'step':>4}  {'x':<14} {'y':<4} {'+':>5} {'-':>5} {'alerts'}")
    alert_total = 0
    for r in reports:
        kinds = sorted({a['kind'] for a in r.alerts})
        alert_total += len(r.alerts)
        print(
            f"{r.step:>4}  {str(list(r.x)):<14} {r.y:<4} "
            f"{len(r.added):>5} {len(r.retracted):>5} "
            f"{len(r.alerts)} {','.join(kinds) if kinds else '-'}"
        )
    if args.strict and alert_total:
        print(f"strict mode: {alert_total} alert(s)", file=sys.stderr)
        return 1
    return 0


def _cmd_check(args) -> int:
    scenario = resolve_scenario(args.scenario)
    declared = {c.get("property"): dict(c) for c in scenario.checks}
    requests = []
    if args.properties:
        for prop in args.properties:
            # start from the scenario's own configuration of this property,
            # then let flags override
            request = declared.get(prop, {})
            request["property"] = prop
            if args.len is not None:
                request["max_len"] = args.len
            if args.points is not None:
                request["points"] = "grid" if args.points == "grid" else json.loads(args.points)
            if args.relation is not None:
                request["relation"] = args.relation
            if args.unrestricted:
                request["unrestricted"] = True
            if args.sample is not None:
                request["sample"] = args.sample
            if args.seed is not None:
                request["seed"] = args.seed
            requests.append(request)
    else:
        requests = [dict(c) for c in scenario.checks]
        if not requests:
            print("scenario declares no checks; name at least one property", file=sys.stderr)
            return 2
        for request in requests:
            if args.len is not None:
                request["max_len"] = args.len

    results = []
    all_ok = True
    for request in requests:
        verdict = run_check(scenario, request, entailment=args.entailment)
        payload = verdict_to_json(verdict)
        ok = verdict_ok(verdict)
        all_ok = all_ok and ok
        results.append(payload)
        marker = "ok" if ok else "NOT-OK"
        print(f"[{marker}] {verdict.property}: {verdict.status} "
              f"(bound {verdict.bound}, {verdict.stats.candidates} candidates)")
        if verdict.witness is not None:
            print(f"  witness: {json.dumps(payload['witness'])}")
    if args.out:
        Path(args.out).write_text(
            json.dumps(results, indent=2) + "\n", encoding="utf-8"
        )
    return 0 if all_ok else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nmexplain",
        description="Explanation sessions with nonmonotonic commitment tracking; "
        f"bundled scenarios: {', '.join(bundled_names())}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="replay a query script against a scenario")
    p_run.add_argument("--scenario", required=True, help="bundled name or JSON path")
    p_run.add_argument("--queries", help='JSON points, e.g. "[[5,0],[20,5]]" (default: scenario script)')
    p_run.add_argument("--entailment", choices=["naive_union", "most_sceptically_specific"])
    p_run.add_argument("--strict", action="store_true", help="exit 1 if any alert fires")
    p_run.add_argument("--out", help="transcript path (default <name>.transcript.jsonl)")
    p_run.set_defaults(func=_cmd_run)

    p_check = sub.add_parser("check", help="run bounded property checks")
    p_check.add_argument("--scenario", required=True)
    p_check.add_argument("properties", nargs="*", help="property names (default: scenario's checks)")
    p_check.add_argument("--len", type=int, help="max sequence length")
    p_check.add_argument("--points", help='JSON points or "grid"')
    p_check.add_argument("--relation", choices=["io", "exp", "entail"])
    p_check.add_argument("--unrestricted", action="store_true",
                         help="pair universes ignore the classifier's outputs")
    p_check.add_argument("--sample", type=int, help="sampled mode: number of sequences")
    p_check.add_argument("--seed", type=int, help="seed for sampled mode")
    p_check.add_argument("--entailment", choices=["naive_union", "most_sceptically_specific"])
    p_check.add_argument("--out", help="write verdicts JSON here")
    p_check.set_defaults(func=_cmd_check)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GridTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnknownPropertyError, ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
