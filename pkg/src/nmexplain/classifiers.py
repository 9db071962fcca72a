"""Black-box classifiers: total, deterministic functions from grid points to labels.

Two concrete kinds:

* ``table`` — an explicit mapping, checked for totality at load time;
* ``rule_list`` — an ordered rule list where the first matching rule wins
  and a default label applies when none match.

The rule-list semantics (first match + default) are deliberately not the
decision-set explanation semantics (no default, no order); the two are
evaluated by separate code paths.
"""
from __future__ import annotations

from dataclasses import dataclass

from .rules import Rule, parse_rule, satisfies
from .space import FeatureSpace, Point


class ClassifierError(ValueError):
    pass


@dataclass(frozen=True)
class TableClassifier:
    kind = "table"
    table: dict[Point, str]


@dataclass(frozen=True)
class RuleListClassifier:
    kind = "rule_list"
    rules: tuple[Rule, ...]
    default: str


Classifier = TableClassifier | RuleListClassifier


def classify(clf: Classifier, space: FeatureSpace, x: Point) -> str:
    if isinstance(clf, TableClassifier):
        return clf.table[x]
    for rule in clf.rules:
        if satisfies(space, x, rule.itemset):
            return rule.consequent
    return clf.default


def materialize(clf: Classifier, space: FeatureSpace) -> TableClassifier:
    """Tabulate any classifier over the grid."""
    return TableClassifier({x: classify(clf, space, x) for x in space.points()})


def load_classifier(payload: dict, space: FeatureSpace, labels: tuple[str, ...]) -> Classifier:
    """Build a classifier from its scenario-file section, validating totality."""
    kind = payload.get("kind")
    if kind == "table":
        table: dict[Point, str] = {}
        for entry in payload.get("entries", []):
            raw_point, label = entry
            x = space.check_point(raw_point)
            if label not in labels:
                raise ClassifierError(f"unknown label {label!r} in table entry for {x}")
            table[x] = label
        for x in space.points():
            if x not in table:
                raise ClassifierError(f"table classifier is not total: missing point {x}")
        return TableClassifier(table)
    if kind == "rule_list":
        rules = tuple(parse_rule(t, space, labels) for t in payload.get("rules", []))
        default = payload.get("default")
        if default not in labels:
            raise ClassifierError(f"unknown default label {default!r}")
        return RuleListClassifier(rules, default)
    raise ClassifierError(f"unknown classifier kind {kind!r}")


def dump_classifier(clf: Classifier) -> dict:
    if isinstance(clf, TableClassifier):
        entries = sorted(clf.table.items())
        return {"kind": "table", "entries": [[list(x), y] for x, y in entries]}
    return {
        "kind": "rule_list",
        "rules": [r.text() for r in clf.rules],
        "default": clf.default,
    }
