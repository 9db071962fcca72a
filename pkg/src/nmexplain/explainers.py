"""Explainers: functions from histories to explanation sequences of equal length.

Three concrete kinds:

* lifted pointwise — a function of a single (input, output) pair applied
  elementwise, so earlier history entries never influence later
  explanations (and vice versa);
* scripted — an explicit table keyed by the entire history, which is how
  the bundled scenarios reproduce history-aware behaviour exactly;
* sufficient-box — a pointwise explainer derived from a classifier: it
  returns one interval-box rule around the queried point whose whole box
  classifies to the observed label.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .classifiers import Classifier, classify
from .rules import DecisionSet, ExplanationSeq, History, Pair, Predicate, Rule
from .space import FeatureSpace, Point

PointwiseFn = Callable[[Point, str], DecisionSet]


class ExplainerError(ValueError):
    pass


class ScriptMissError(ExplainerError):
    """The scripted explainer has no entry for this history."""

    def __init__(self, history: History):
        super().__init__(f"no scripted explanation for history {history}")
        self.history = history


@dataclass(frozen=True)
class LiftedExplainer:
    kind = "lifted_pointwise"
    pointwise: PointwiseFn


@dataclass(frozen=True)
class ScriptedExplainer:
    kind = "scripted"
    script: dict[History, ExplanationSeq]

    def __post_init__(self):
        for history, seq in self.script.items():
            if len(seq) != len(history):
                raise ExplainerError(
                    f"script maps a history of length {len(history)} "
                    f"to {len(seq)} explanations"
                )


Explainer = LiftedExplainer | ScriptedExplainer


def lift(e: PointwiseFn) -> LiftedExplainer:
    return LiftedExplainer(e)


def explain(ex: Explainer, h: History) -> ExplanationSeq:
    """Output length always equals history length; empty history yields ()."""
    if not h:
        return ()
    if isinstance(ex, LiftedExplainer):
        return tuple(ex.pointwise(x, y) for x, y in h)
    try:
        return ex.script[h]
    except KeyError:
        raise ScriptMissError(h) from None


# --------------------------------------------------------------------------
# pointwise explainers

def point_box_rule(space: FeatureSpace, x: Point, y: str) -> DecisionSet:
    """The narrowest box: pin every feature to the queried value."""
    itemset = tuple(
        Predicate(f.name, "==", v) for f, v in zip(space.features, x)
    )
    return DecisionSet.of([Rule(itemset, y)])


@dataclass(frozen=True)
class PointwiseTable:
    """Pointwise explainer backed by a finite table.

    Pairs outside the table fall back to the point-pinning box rule, so
    the function is total and still explains its own pair.
    """

    space: FeatureSpace
    entries: dict[Pair, DecisionSet]

    def __call__(self, x: Point, y: str) -> DecisionSet:
        got = self.entries.get((x, y))
        if got is not None:
            return got
        return point_box_rule(self.space, x, y)


def sufficient_box_explain(space: FeatureSpace, clf: Classifier, x: Point, y: str) -> DecisionSet:
    """One maximal-under-schedule box rule around x that guarantees label y.

    Requires classify(x) = y. The box is grown greedily in feature order,
    lower bound before upper bound, one grid step at a time, as long as
    every grid point inside stays classified y. Bounds that reach the
    edge of the feature space are omitted from the itemset, so a box
    spanning everything serializes as an empty conjunction.
    """
    if classify(clf, space, x) != y:
        raise ExplainerError(f"not the classifier's output: classify({x}) != {y!r}")

    lo = list(x)
    hi = list(x)

    def slab_is(axis: int, value: int, label: str) -> bool:
        # all points of the current box with feature `axis` pinned to `value`
        ranges = [
            range(lo[i], hi[i] + 1, space.features[i].step) if i != axis else (value,)
            for i in range(len(space.features))
        ]
        def rec(i, acc):
            if i == len(ranges):
                return classify(clf, space, tuple(acc)) == label
            return all(rec(i + 1, acc + [v]) for v in ranges[i])
        return rec(0, [])

    for i, feat in enumerate(space.features):
        while lo[i] - feat.step >= feat.min and slab_is(i, lo[i] - feat.step, y):
            lo[i] -= feat.step
        while hi[i] + feat.step <= feat.max and slab_is(i, hi[i] + feat.step, y):
            hi[i] += feat.step

    itemset: list[Predicate] = []
    for i, feat in enumerate(space.features):
        if lo[i] > feat.min:
            itemset.append(Predicate(feat.name, ">=", lo[i]))
        if hi[i] < feat.max:
            itemset.append(Predicate(feat.name, "<=", hi[i]))
    return DecisionSet.of([Rule(tuple(itemset), y)])


@dataclass
class SufficientBoxPointwise:
    """Pointwise sufficient-box explainer bound to one classifier."""

    space: FeatureSpace
    classifier: Classifier
    _cache: dict[Pair, DecisionSet] = field(default_factory=dict, repr=False)

    def __call__(self, x: Point, y: str) -> DecisionSet:
        key = (x, y)
        if key not in self._cache:
            self._cache[key] = sufficient_box_explain(self.space, self.classifier, x, y)
        return self._cache[key]
