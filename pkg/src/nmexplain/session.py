"""Interactive explanation sessions.

A session owns a growing history. Each query classifies the point,
re-explains the whole history, retabulates commitments under the
configured entailment relation, and reports the commitment delta plus
alerts:

* ``inconsistency`` — some point is committed to two labels;
* ``retraction`` — a previously committed (point, label) is gone;
* ``stability_violation`` — an earlier explanation changed;
* ``reflexivity_breach`` — some history pair is no longer committed.

Alerts are observations, not errors; the session continues. Sessions are
append-only: undo is a replay of a prefix.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .entailment import CommitmentMap, EntailmentRelation
from .classifiers import classify
from .explainers import explain
from .rules import ExplanationSeq, History, Pair
from .space import Point


@dataclass(frozen=True)
class StepReport:
    step: int
    x: Point
    y: str
    explanations: ExplanationSeq
    added: tuple[Pair, ...]
    retracted: tuple[Pair, ...]
    kept: tuple[Pair, ...]
    alerts: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "x": list(self.x),
            "y": self.y,
            "explanations": [d.rule_texts() for d in self.explanations],
            "delta": {
                "added": [[list(x), y] for x, y in self.added],
                "retracted": [[list(x), y] for x, y in self.retracted],
                "kept": [[list(x), y] for x, y in self.kept],
            },
            "alerts": list(self.alerts),
        }


def report_line(report: StepReport) -> str:
    return json.dumps(report.to_json(), separators=(",", ":"))


def transcript_text(reports) -> str:
    return "".join(report_line(r) + "\n" for r in reports)


@dataclass
class Session:
    scenario: "Scenario"
    relation: EntailmentRelation
    history: History = ()
    explanations: ExplanationSeq = ()
    commitments: CommitmentMap = field(default_factory=lambda: CommitmentMap({}))
    step: int = 0
    reports: list[StepReport] = field(default_factory=list)


def start_session(scenario, entailment: str | None = None) -> Session:
    """Fresh session; validates the scenario's grid against the cap."""
    from .entailment import make_relation

    scenario.space.points()  # refuse oversized grids up front
    kind = entailment or scenario.entailment
    rel = make_relation(kind, scenario.space, scenario.labels)
    return Session(scenario=scenario, relation=rel)


def query(session: Session, x: Point) -> StepReport:
    scenario = session.scenario
    rel = session.relation
    x = scenario.space.check_point(x)

    y = classify(scenario.classifier, scenario.space, x)
    history = session.history + ((x, y),)
    explanations = explain(scenario.explainer, history)
    cmap = rel.commitments(explanations)

    prev_pairs = set(session.commitments.pairs(scenario.labels))
    cur_pairs = set(cmap.pairs(scenario.labels))
    order = {lab: i for i, lab in enumerate(scenario.labels)}

    def ordered(pairs):
        return tuple(sorted(pairs, key=lambda p: (p[0], order[p[1]])))

    added = ordered(cur_pairs - prev_pairs)
    retracted = ordered(prev_pairs - cur_pairs)
    kept = ordered(cur_pairs & prev_pairs)

    alerts: list[dict] = []
    for p in sorted(cmap.entries):
        labs = cmap.entries[p]
        if len(labs) >= 2:
            alerts.append({
                "kind": "inconsistency",
                "x": list(p),
                "labels": sorted(labs, key=order.get),
            })
    for p, old in retracted:
        now = cmap.labels_at(p)
        alerts.append({
            "kind": "retraction",
            "x": list(p),
            "old": old,
            "new": min(now, key=order.get) if len(now) == 1 else None,
        })
    for i, (before, after) in enumerate(zip(session.explanations, explanations)):
        if before != after:
            alerts.append({"kind": "stability_violation", "index": i})
    for i, (xi, yi) in enumerate(history):
        if yi not in cmap.labels_at(xi):
            alerts.append({"kind": "reflexivity_breach", "index": i})

    session.history = history
    session.explanations = explanations
    session.commitments = cmap
    session.step += 1
    report = StepReport(
        step=session.step,
        x=x,
        y=y,
        explanations=explanations,
        added=added,
        retracted=retracted,
        kept=kept,
        alerts=tuple(alerts),
    )
    session.reports.append(report)
    return report


def replay(scenario, queries, entailment: str | None = None) -> list[StepReport]:
    """Deterministic batch driver: fold `query` over a fresh session."""
    session = start_session(scenario, entailment)
    return [query(session, x) for x in queries]
