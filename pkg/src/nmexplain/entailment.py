"""Entailment from explanation sequences to input-output commitments.

A relation decides, for a sequence of decision sets, whether it commits
to output y at input x. Two instantiations:

* ``naive_union`` — read the sequence as the union of all rules: any
  rule covering x commits its consequent there. Order-insensitive and
  monotonic; two labels can be committed at one point, which is exactly
  the inconsistency the sceptical relation exists to resolve.

* ``most_sceptically_specific`` — defined recursively on the sequence.
  A single decision set commits at x to the shared consequent of its
  coverage-minimal applicable rules (nothing on a tie). Appending a new
  explanation that is more specific than the sequence so far (its
  covered inputs are a subset) overrides the commitment wherever the
  newcomer commits and keeps the old commitment elsewhere; appending an
  explanation that is not more specific withdraws commitment at points
  where the two sides disagree and takes the union of their commitments
  everywhere else. Consistent by construction, and non-monotonic.

Every relation is evaluated along two deliberately separate routes that
must agree: ``entails`` answers per point by direct recursion on the
definition, while ``commitments`` tabulates the whole grid bottom-up.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .explainers import Explainer, explain
from .rules import DecisionSet, ExplanationSeq, History, itemset_points, satisfies
from .space import FeatureSpace, Point

NAIVE_UNION = "naive_union"
MOST_SCEPTICALLY_SPECIFIC = "most_sceptically_specific"
KINDS = (NAIVE_UNION, MOST_SCEPTICALLY_SPECIFIC)


@dataclass(frozen=True)
class CommitmentMap:
    """Tabulation of one relation over the grid: point -> committed labels.

    Points with no commitment are simply absent.
    """

    entries: dict[Point, frozenset[str]]

    def labels_at(self, x: Point) -> frozenset[str]:
        return self.entries.get(x, frozenset())

    def covered(self) -> frozenset[Point]:
        return frozenset(self.entries)

    def pairs(self, label_order: tuple[str, ...]) -> list[tuple[Point, str]]:
        rank = {lab: i for i, lab in enumerate(label_order)}
        out = [(x, lab) for x, labs in self.entries.items() for lab in labs]
        out.sort(key=lambda p: (p[0], rank.get(p[1], len(rank))))
        return out


class EntailmentRelation:
    """One of the two relation kinds, bound to a feature space and label set.

    Instances are semantically immutable; the mutable state below is
    memoization only.
    """

    def __init__(self, kind: str, space: FeatureSpace, labels: tuple[str, ...]):
        if kind not in KINDS:
            raise ValueError(f"unknown entailment kind {kind!r} (expected one of {KINDS})")
        self.kind = kind
        self.space = space
        self.labels = labels
        self._itemset_cov: dict = {}
        self._sing_map: dict[DecisionSet, dict[Point, str]] = {}
        self._sing_cover: dict[DecisionSet, frozenset[Point]] = {}
        self._naive_dset_map: dict[DecisionSet, dict[Point, frozenset[str]]] = {}
        self._point_label: dict[tuple[ExplanationSeq, Point], str | None] = {}
        self._ms_memo: dict[tuple[DecisionSet, ExplanationSeq], bool] = {}
        self._map_memo: dict[ExplanationSeq, CommitmentMap] = {}

    # -- shared semantic ingredients ------------------------------------

    def _cov(self, itemset) -> frozenset[Point]:
        if itemset not in self._itemset_cov:
            self._itemset_cov[itemset] = itemset_points(self.space, itemset)
        return self._itemset_cov[itemset]

    def _singleton_label_at(self, dset: DecisionSet, x: Point) -> str | None:
        """Sceptical reading of one decision set at one point.

        Applicable rules are those whose itemset x satisfies; only rules
        with coverage minimal under set inclusion stay applicable; the
        point is committed iff all survivors agree.
        """
        applicable = [r for r in dset if satisfies(self.space, x, r.itemset)]
        if not applicable:
            return None
        covs = {r: self._cov(r.itemset) for r in applicable}
        minimal = [r for r in applicable if not any(covs[o] < covs[r] for o in applicable)]
        consequents = {r.consequent for r in minimal}
        if len(consequents) == 1:
            return next(iter(consequents))
        return None

    def _singleton_map(self, dset: DecisionSet) -> dict[Point, str]:
        """Grid tabulation of the sceptical single-explanation reading."""
        if dset not in self._sing_map:
            covs = {r: self._cov(r.itemset) for r in dset}
            applicable: dict[Point, list] = {}
            for r, cov in covs.items():
                for p in cov:
                    applicable.setdefault(p, []).append(r)
            out: dict[Point, str] = {}
            for p, rs in applicable.items():
                minimal = [r for r in rs if not any(covs[o] < covs[r] for o in rs)]
                consequents = {r.consequent for r in minimal}
                if len(consequents) == 1:
                    out[p] = next(iter(consequents))
            self._sing_map[dset] = out
        return self._sing_map[dset]

    # -- per-point recursion (the definition, read top-down) -------------

    def entails(self, seq: ExplanationSeq, x: Point, y: str) -> bool:
        seq = tuple(seq)
        if self.kind == NAIVE_UNION:
            return any(
                r.consequent == y and satisfies(self.space, x, r.itemset)
                for dset in seq
                for r in dset
            )
        return self._mss_label(seq, x) == y

    def covers(self, seq: ExplanationSeq, x: Point) -> bool:
        """True iff some label is committed at x."""
        seq = tuple(seq)
        if self.kind == NAIVE_UNION:
            return any(satisfies(self.space, x, r.itemset) for dset in seq for r in dset)
        return self._mss_label(seq, x) is not None

    def _mss_label(self, seq: ExplanationSeq, x: Point) -> str | None:
        key = (seq, x)
        if key in self._point_label:
            return self._point_label[key]
        if not seq:
            label = None
        elif len(seq) == 1:
            label = self._singleton_label_at(seq[0], x)
        else:
            init, last = seq[:-1], seq[-1]
            fresh = self._singleton_label_at(last, x)
            if self._more_specific_than_seq(last, init):
                label = fresh if fresh is not None else self._mss_label(init, x)
            else:
                old = self._mss_label(init, x)
                if fresh is not None and old is not None and fresh != old:
                    label = None
                else:
                    label = fresh if fresh is not None else old
        self._point_label[key] = label
        return label

    def _recursive_cover(self, dset: DecisionSet) -> frozenset[Point]:
        # cover of a single explanation, derived point by point so the
        # recursive route does not lean on the tabulated singleton map
        if dset not in self._sing_cover:
            self._sing_cover[dset] = frozenset(
                p for p in self.space.points()
                if self._singleton_label_at(dset, p) is not None
            )
        return self._sing_cover[dset]

    def _more_specific_than_seq(self, dset: DecisionSet, seq: ExplanationSeq) -> bool:
        """Is the single explanation more specific than the sequence so far?

        Every point it covers (commits some label at) must be covered by
        the sequence.
        """
        key = (dset, seq)
        if key not in self._ms_memo:
            self._ms_memo[key] = all(
                self._mss_label(seq, p) is not None for p in self._recursive_cover(dset)
            )
        return self._ms_memo[key]

    # -- whole-grid tabulation (the independent bottom-up route) ---------

    def commitments(self, seq: ExplanationSeq) -> CommitmentMap:
        seq = tuple(seq)
        if seq not in self._map_memo:
            if self.kind == NAIVE_UNION:
                merged: dict[Point, set[str]] = {}
                for dset in seq:
                    for p, labs in self._naive_map(dset).items():
                        merged.setdefault(p, set()).update(labs)
                entries = {p: frozenset(labs) for p, labs in merged.items()}
            else:
                entries = {
                    p: frozenset((lab,)) for p, lab in self._mss_map(seq).items()
                }
            self._map_memo[seq] = CommitmentMap(entries)
        return self._map_memo[seq]

    def _naive_map(self, dset: DecisionSet) -> dict[Point, frozenset[str]]:
        if dset not in self._naive_dset_map:
            out: dict[Point, set[str]] = {}
            for r in dset:
                for p in self._cov(r.itemset):
                    out.setdefault(p, set()).add(r.consequent)
            self._naive_dset_map[dset] = {p: frozenset(s) for p, s in out.items()}
        return self._naive_dset_map[dset]

    def _mss_map(self, seq: ExplanationSeq) -> dict[Point, str]:
        if not seq:
            return {}
        current = dict(self._singleton_map(seq[0]))
        for dset in seq[1:]:
            incoming = self._singleton_map(dset)
            if set(incoming) <= set(current):
                # more specific: override where the newcomer commits
                current = {**current, **incoming}
            else:
                merged: dict[Point, str] = {}
                for p in set(current) | set(incoming):
                    fresh, old = incoming.get(p), current.get(p)
                    if fresh is not None and old is not None and fresh != old:
                        continue  # commitment withdrawn
                    merged[p] = fresh if fresh is not None else old
                current = merged
        return current

    # -- derived notions --------------------------------------------------

    def more_specific(self, a: Iterable[DecisionSet], b: Iterable[DecisionSet]) -> bool:
        """Every input covered by a is covered by b (by grid enumeration)."""
        cov_a = self.commitments(tuple(a)).covered()
        cov_b = self.commitments(tuple(b)).covered()
        return cov_a <= cov_b


def make_relation(kind: str, space: FeatureSpace, labels: tuple[str, ...]) -> EntailmentRelation:
    return EntailmentRelation(kind, space, labels)


# --------------------------------------------------------------------------
# module-level operation surface

def entails(rel: EntailmentRelation, seq: ExplanationSeq, x: Point, y: str) -> bool:
    return rel.entails(seq, x, y)


def covers_seq(rel: EntailmentRelation, seq: ExplanationSeq, x: Point) -> bool:
    return rel.covers(seq, x)


def more_specific(a: ExplanationSeq, b: ExplanationSeq, rel: EntailmentRelation) -> bool:
    return rel.more_specific(a, b)


def commitments(rel: EntailmentRelation, seq: ExplanationSeq) -> CommitmentMap:
    return rel.commitments(seq)


def derive_io(ex: Explainer, rel: EntailmentRelation, h: History, x: Point, y: str) -> bool:
    """History-level consequence: the explanations of h commit to (x, y)."""
    return rel.entails(explain(ex, h), x, y)


def derive_exp(rel: EntailmentRelation, seq: ExplanationSeq, e: DecisionSet) -> bool:
    """Explanation-level consequence: everything e commits to, seq commits to."""
    m_single = rel.commitments((e,))
    m_seq = rel.commitments(tuple(seq))
    return all(labs <= m_seq.labels_at(x) for x, labs in m_single.entries.items())


def respects_specificity(rel: EntailmentRelation, pool, bound):
    """Bounded check that the relation respects specificity on this pool."""
    from .properties import check_respects_specificity

    return check_respects_specificity(rel, pool, bound)
