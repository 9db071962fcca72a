#!/usr/bin/env python3
"""Drive every bundled scenario end to end: replay its query script,
summarize commitment deltas and alerts, then run its declared property
checks. A compact smoke run of the whole engine."""
from __future__ import annotations

import argparse
import json

from nmexplain import bundled_names, load_bundled, replay, run_check, verdict_ok, verdict_to_json


def show_scenario(name: str, verbose: bool) -> bool:
    scenario = load_bundled(name)
    print(f"\n=== {name} ({scenario.entailment}) ===")
    reports = replay(scenario, scenario.queries)
    for r in reports:
        kinds = sorted({a["kind"] for a in r.alerts})
        print(
            f"  step {r.step}: x={list(r.x)} y={r.y} "
            f"+{len(r.added)} -{len(r.retracted)} "
            f"alerts={','.join(kinds) if kinds else 'none'}"
        )
        if verbose:
            for d in r.explanations:
                print(f"    {d.rule_texts()}")

    ok = True
    for request in scenario.checks:
        verdict = run_check(scenario, request)
        expect = request.get("expect")
        if expect is not None:
            good = verdict.status.startswith(expect)
        else:
            good = verdict_ok(verdict)
        ok = ok and good
        print(f"  check {verdict.property}: {verdict.status} "
              f"[{'as expected' if good else 'unexpected'}]")
        if verdict.witness is not None and verbose:
            print(f"    witness: {json.dumps(verdict_to_json(verdict)['witness'])}")
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", action="append", help="restrict to these names")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    names = args.scenario or bundled_names()
    results = {name: show_scenario(name, args.verbose) for name in names}
    bad = [n for n, ok in results.items() if not ok]
    print()
    if bad:
        print(f"unexpected check outcomes in: {', '.join(bad)}")
        return 1
    print(f"{len(results)} scenario(s) replayed; all checks came out as expected")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
