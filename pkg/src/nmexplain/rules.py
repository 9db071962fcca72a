"""The rule language: predicates, rules, decision sets, and their parser.

Grammar (ASCII, UTF-8 text):

    rule    := itemset "->" label
    itemset := <empty> | pred ("&" pred)*
    pred    := name op int
    op      := "<" | "<=" | ">" | ">=" | "==" | "!="

An empty itemset is written as just ``-> label`` and covers every point.
A decision set is a finite set of rules with no default class and no
tie-breaking; how conflicts between rules are read is the business of
the entailment relations, not of this module.
"""
from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Iterable

from .space import FeatureSpace, Point

OPS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
}


class RuleError(ValueError):
    pass


class RuleSyntaxError(RuleError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position + 1} in {text!r}")
        self.position = position


class UnknownFeatureError(RuleError):
    pass


class UnknownLabelError(RuleError):
    pass


@dataclass(frozen=True)
class Predicate:
    feature: str
    op: str
    threshold: int

    def __post_init__(self):
        if self.op not in OPS:
            raise RuleError(f"bad operator {self.op!r}")

    def holds(self, value: int) -> bool:
        return OPS[self.op](value, self.threshold)

    def text(self) -> str:
        return f"{self.feature} {self.op} {self.threshold}"


@dataclass(frozen=True)
class Rule:
    itemset: tuple[Predicate, ...]
    consequent: str

    def text(self) -> str:
        if not self.itemset:
            return f"-> {self.consequent}"
        return " & ".join(p.text() for p in self.itemset) + f" -> {self.consequent}"


@dataclass(frozen=True)
class DecisionSet:
    """A finite set of rules; may be empty (entails nothing anywhere)."""

    rules: frozenset[Rule]

    @classmethod
    def of(cls, rules: Iterable[Rule]) -> "DecisionSet":
        return cls(frozenset(rules))

    @classmethod
    def parse(cls, texts: Iterable[str], space: FeatureSpace, labels: tuple[str, ...]) -> "DecisionSet":
        return cls.of(parse_rule(t, space, labels) for t in texts)

    def rule_texts(self) -> list[str]:
        """Canonical serialization: rule texts in sorted order."""
        return sorted(r.text() for r in self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<op><=|>=|==|!=|<|>)|(?P<arrow>->)|(?P<amp>&)"
    r"|(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise RuleSyntaxError("unexpected character", text, len(text) - len(stripped))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_rule(text: str, space: FeatureSpace, labels: tuple[str, ...]) -> Rule:
    """Parse one rule; raises RuleSyntaxError / UnknownFeatureError / UnknownLabelError."""
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else ("eof", "", len(text))

    preds: list[Predicate] = []
    if peek()[0] == "name":
        while True:
            kind, name, pos = peek()
            if kind != "name":
                raise RuleSyntaxError("expected feature name", text, pos)
            if not space.has_feature(name):
                raise UnknownFeatureError(f"unknown feature {name!r} in {text!r}")
            i += 1
            kind, op, pos = peek()
            if kind != "op":
                raise RuleSyntaxError("expected comparison operator", text, pos)
            i += 1
            kind, value, pos = peek()
            if kind != "int":
                raise RuleSyntaxError("expected integer threshold", text, pos)
            i += 1
            preds.append(Predicate(name, op, int(value)))
            kind, _, pos = peek()
            if kind == "amp":
                i += 1
                continue
            break

    kind, _, pos = peek()
    if kind != "arrow":
        raise RuleSyntaxError("expected '->'", text, pos)
    i += 1
    kind, label, pos = peek()
    if kind not in ("name", "int"):
        raise RuleSyntaxError("expected label", text, pos)
    i += 1
    kind, _, pos = peek()
    if kind != "eof":
        raise RuleSyntaxError("trailing input", text, pos)
    if label not in labels:
        raise UnknownLabelError(f"unknown label {label!r} in {text!r} (declared: {list(labels)})")
    return Rule(tuple(preds), label)


def serialize_rule(rule: Rule) -> str:
    return rule.text()


# --------------------------------------------------------------------------
# evaluation

def satisfies(space: FeatureSpace, point: Point, itemset: Iterable[Predicate]) -> bool:
    """True iff every predicate holds of the point (empty conjunction holds)."""
    return all(p.holds(point[space.index_of(p.feature)]) for p in itemset)


def itemset_points(space: FeatureSpace, itemset: tuple[Predicate, ...]) -> frozenset[Point]:
    """Exact coverage of a conjunction, by grid enumeration."""
    return frozenset(p for p in space.points() if satisfies(space, p, itemset))


def coverage(explanations: Iterable[DecisionSet], space: FeatureSpace) -> frozenset[Point]:
    """Points satisfying at least one rule itemset of at least one explanation.

    This is coverage at rule granularity, the building block for
    specificity; entailment-level cover is a different notion and lives
    with the entailment relations.
    """
    covered: set[Point] = set()
    for dset in explanations:
        for rule in dset:
            covered.update(itemset_points(space, rule.itemset))
    return frozenset(covered)


# Shared sequence vocabulary: a history is what the explainer consumes,
# an explanation sequence is what it produces (always the same length).
Pair = tuple[Point, str]
History = tuple[Pair, ...]
ExplanationSeq = tuple[DecisionSet, ...]
