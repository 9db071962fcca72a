"""Bounded checkers for consequence-relation properties.

A consequence relation here is any judged relation from finite sequences
over a universe to target elements. The checkers enumerate candidate
instances up to a sequence-length bound (exhaustively, or by seeded
sampling) and return a Verdict: either ``holds_up_to_bound`` — never a
claim of universal truth — or ``fails`` with the first witness in
enumeration order, replayable against the judge.

One inversion to keep in mind: ``find_nonmonotonicity_witness`` reports
``fails`` when a witness IS found, i.e. when the relation is
non-monotonic; for that check a witness is usually the expected outcome,
and callers treat it accordingly.

Candidate counting, for the exhaustive mode (U the universe, T the
targets, L the bound):

* reflexivity		sum over k<=L of |U|^k * k
* cautious monotonicity, cut, non-monotonicity
			sum over k<=L of |U|^k * |U| * |T|
* consistency		sum over k<=L of |U|^k * (points scanned)
* interaction stability	one candidate per (history, prefix) pair

A run that stops at a witness reports the counts examined so far.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .classifiers import Classifier, classify
from .entailment import EntailmentRelation, derive_exp, derive_io
from .explainers import Explainer, explain
from .rules import DecisionSet, History, Pair
from .space import FeatureSpace, Point

HOLDS = "holds_up_to_bound"
FAILS = "fails"


@dataclass(frozen=True)
class SearchBound:
    """How far to search: max sequence length, plus optional sampling."""

    max_len: int
    sample: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_len < 0:
            raise ValueError("max_len must be >= 0")


@dataclass
class SearchStats:
    sequences: int = 0
    candidates: int = 0


@dataclass
class Verdict:
    property: str
    status: str
    bound: int
    witness: dict | None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


@dataclass
class ConsequenceRelation:
    """A judged relation from sequences over `universe` to `targets`.

    For the homogeneous relations (history level, explanation level) the
    targets are the universe itself; the raw commitment relation uses
    explanation sequences against (point, label) targets.
    """

    universe: tuple
    judge: Callable[[tuple, object], bool]
    targets: tuple | None = None

    def __post_init__(self):
        if not self.universe:
            raise ValueError("universe must be non-empty")
        if self.targets is None:
            self.targets = tuple(self.universe)


def _sequences(universe: Sequence, bound: SearchBound) -> Iterator[tuple]:
    """Candidate sequences: all lengths 0..max_len in lexicographic order,
    or a seeded random sample of them."""
    if bound.sample is not None:
        rng = random.Random(bound.seed)
        for _ in range(bound.sample):
            k = rng.randint(0, bound.max_len)
            yield tuple(rng.choice(universe) for _ in range(k))
        return
    for k in range(bound.max_len + 1):
        yield from itertools.product(universe, repeat=k)


def _verdict(prop: str, bound: SearchBound, witness: dict | None, stats: SearchStats) -> Verdict:
    status = FAILS if witness is not None else HOLDS
    return Verdict(prop, status, bound.max_len, witness, stats)


# --------------------------------------------------------------------------
# generic checkers over a ConsequenceRelation

def check_reflexivity(cr: ConsequenceRelation, bound: SearchBound) -> Verdict:
    stats = SearchStats()
    for seq in _sequences(cr.universe, bound):
        stats.sequences += 1
        for i, element in enumerate(seq):
            stats.candidates += 1
            if not cr.judge(seq, element):
                witness = {"sequence": seq, "index": i, "element": element}
                return _verdict("reflexivity", bound, witness, stats)
    return _verdict("reflexivity", bound, None, stats)


def check_cautious_monotonicity(cr: ConsequenceRelation, bound: SearchBound) -> Verdict:
    """If seq entails the new element and entails s, the extended sequence
    still entails s."""
    stats = SearchStats()
    for seq in _sequences(cr.universe, bound):
        stats.sequences += 1
        for extra in cr.universe:
            extended = seq + (extra,)
            entails_extra = cr.judge(seq, extra)
            for target in cr.targets:
                stats.candidates += 1
                if not entails_extra:
                    continue
                if cr.judge(seq, target) and not cr.judge(extended, target):
                    witness = {"sequence": seq, "extra": extra, "target": target}
                    return _verdict("cautious_monotonicity", bound, witness, stats)
    return _verdict("cautious_monotonicity", bound, None, stats)


def check_cut(cr: ConsequenceRelation, bound: SearchBound) -> Verdict:
    """If the extended sequence entails s and seq entails the new element,
    seq already entails s."""
    stats = SearchStats()
    for seq in _sequences(cr.universe, bound):
        stats.sequences += 1
        for extra in cr.universe:
            extended = seq + (extra,)
            entails_extra = cr.judge(seq, extra)
            for target in cr.targets:
                stats.candidates += 1
                if not entails_extra:
                    continue
                if cr.judge(extended, target) and not cr.judge(seq, target):
                    witness = {"sequence": seq, "extra": extra, "target": target}
                    return _verdict("cut", bound, witness, stats)
    return _verdict("cut", bound, None, stats)


def find_nonmonotonicity_witness(cr: ConsequenceRelation, bound: SearchBound) -> Verdict:
    """Witness search: seq entails s but seq + extra does not.

    Inverted semantics: status ``fails`` means a witness was found, i.e.
    the relation is non-monotonic up to the bound.
    """
    stats = SearchStats()
    for seq in _sequences(cr.universe, bound):
        stats.sequences += 1
        for extra in cr.universe:
            extended = seq + (extra,)
            for target in cr.targets:
                stats.candidates += 1
                if cr.judge(seq, target) and not cr.judge(extended, target):
                    witness = {"sequence": seq, "extra": extra, "target": target}
                    return _verdict("non_monotonicity", bound, witness, stats)
    return _verdict("non_monotonicity", bound, None, stats)


# --------------------------------------------------------------------------
# entailment-level checkers

def check_consistency(
    rel: EntailmentRelation,
    pool: Sequence[DecisionSet],
    bound: SearchBound,
    points: Sequence[Point] | None = None,
) -> Verdict:
    """No examined sequence may commit two labels at one point.

    `points` restricts the scan (defaults to the whole grid).
    """
    scan = tuple(points) if points is not None else rel.space.points()
    stats = SearchStats()
    for seq in _sequences(tuple(pool), bound):
        stats.sequences += 1
        cmap = rel.commitments(seq)
        for x in scan:
            stats.candidates += 1
            labs = cmap.labels_at(x)
            if len(labs) >= 2:
                ordered = sorted(labs, key=rel.labels.index)
                witness = {"sequence": seq, "x": x, "labels": ordered}
                return _verdict("consistency", bound, witness, stats)
    return _verdict("consistency", bound, None, stats)


def check_respects_specificity(
    rel: EntailmentRelation,
    pool: Sequence[DecisionSet],
    bound: SearchBound,
    points: Sequence[Point] | None = None,
) -> Verdict:
    """Consistency, plus: a more-specific newcomer keeps all its own
    commitments when appended."""
    consistency = check_consistency(rel, pool, bound, points)
    stats = SearchStats(consistency.stats.sequences, consistency.stats.candidates)
    if not consistency.holds:
        witness = dict(consistency.witness or {})
        witness["violates"] = "consistency"
        return _verdict("respects_specificity", bound, witness, stats)
    for seq in _sequences(tuple(pool), bound):
        for extra in pool:
            stats.candidates += 1
            if not rel.more_specific((extra,), seq):
                continue
            own = rel.commitments((extra,))
            extended = rel.commitments(seq + (extra,))
            for x, labs in own.entries.items():
                if not labs <= extended.labels_at(x):
                    witness = {
                        "violates": "specificity",
                        "sequence": seq,
                        "extra": extra,
                        "x": x,
                        "labels": sorted(labs - extended.labels_at(x)),
                    }
                    return _verdict("respects_specificity", bound, witness, stats)
    return _verdict("respects_specificity", bound, None, stats)


def check_interaction_stability(ex: Explainer, histories: Iterable[History]) -> Verdict:
    """Earlier explanations must never change as the history extends.

    Every history in the family (and each of its prefixes) must be
    acceptable to the explainer.
    """
    stats = SearchStats()
    for h in histories:
        stats.sequences += 1
        full = explain(ex, h)
        for m in range(len(h) - 1):
            stats.candidates += 1
            prefix = explain(ex, h[: m + 1])
            for i in range(m + 1):
                if full[i] != prefix[i]:
                    witness = {"history": h, "prefix_len": m + 1, "index": i}
                    return Verdict("interaction_stability", FAILS, 0, witness, stats)
    return Verdict("interaction_stability", HOLDS, 0, None, stats)


# --------------------------------------------------------------------------
# universe and relation builders

def consistent_pairs(
    space: FeatureSpace, clf: Classifier, points: Sequence[Point]
) -> tuple[Pair, ...]:
    """Classifier-consistent (x, C(x)) pairs over the given points."""
    return tuple((space.check_point(p), classify(clf, space, space.check_point(p))) for p in points)


def all_pairs(
    space: FeatureSpace, labels: tuple[str, ...], points: Sequence[Point]
) -> tuple[Pair, ...]:
    """Unrestricted (x, y) pairs: every label at every given point."""
    return tuple((space.check_point(p), lab) for p in points for lab in labels)


def io_relation(
    ex: Explainer, rel: EntailmentRelation, universe: Sequence[Pair]
) -> ConsequenceRelation:
    """History-level relation: explain the judged sequence, then ask the
    entailment relation about the target pair."""
    cache: dict[tuple, bool] = {}

    def judge(seq: tuple, target: Pair) -> bool:
        key = (seq, target)
        if key not in cache:
            x, y = target
            cache[key] = derive_io(ex, rel, seq, x, y)
        return cache[key]

    return ConsequenceRelation(tuple(universe), judge)


def exp_relation(
    rel: EntailmentRelation, pool: Sequence[DecisionSet]
) -> ConsequenceRelation:
    """Explanation-level relation over a pool of decision sets."""
    cache: dict[tuple, bool] = {}

    def judge(seq: tuple, target: DecisionSet) -> bool:
        key = (seq, target)
        if key not in cache:
            cache[key] = derive_exp(rel, seq, target)
        return cache[key]

    return ConsequenceRelation(tuple(pool), judge)


def entail_relation(
    rel: EntailmentRelation,
    pool: Sequence[DecisionSet],
    target_points: Sequence[Point] | None = None,
) -> ConsequenceRelation:
    """The raw commitment relation: explanation sequences against
    (point, label) targets, default targets being the whole grid."""
    pts = tuple(target_points) if target_points is not None else rel.space.points()
    targets = tuple((p, lab) for p in pts for lab in rel.labels)

    def judge(seq: tuple, target: Pair) -> bool:
        x, y = target
        return rel.entails(seq, x, y)

    return ConsequenceRelation(tuple(pool), judge, targets)


def consistent_histories(
    space: FeatureSpace,
    clf: Classifier,
    points: Sequence[Point],
    max_len: int,
) -> Iterator[History]:
    """All classifier-consistent histories of length 1..max_len over points."""
    pairs = consistent_pairs(space, clf, points)
    for k in range(1, max_len + 1):
        yield from itertools.product(pairs, repeat=k)
