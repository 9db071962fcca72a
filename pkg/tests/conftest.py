from __future__ import annotations

import pytest
from hypothesis import strategies as st

from nmexplain import (
    DecisionSet,
    Feature,
    FeatureSpace,
    Predicate,
    Rule,
)

LABELS = ("0", "1")


@pytest.fixture(scope="session")
def space() -> FeatureSpace:
    """The default 41x41 grid used by the bundled scenarios."""
    return FeatureSpace((Feature("f", -20, 20), Feature("g", -20, 20)))


@pytest.fixture(scope="session")
def labels():
    return LABELS


def _parse(space, *texts) -> DecisionSet:
    return DecisionSet.parse(texts, space, LABELS)


@pytest.fixture(scope="session")
def broad(space) -> DecisionSet:
    """One wide rule committing label 1 on the right half plane."""
    return _parse(space, "f > 0 -> 1")


@pytest.fixture(scope="session")
def narrow(space) -> DecisionSet:
    """A strictly narrower rule committing label 0 inside broad's region."""
    return _parse(space, "f > 10 & g > 3 -> 0")


@pytest.fixture(scope="session")
def pool6(space, broad, narrow) -> tuple[DecisionSet, ...]:
    """Six decision sets: the two scenario rules plus four fixtures that
    exercise empty sets, equally specific cross rules, direct label flips
    and rule-level specificity inside one set."""
    empty = DecisionSet.of([])
    crossing = _parse(space, "f > 0 -> 1", "g > 0 -> 0")
    narrow_flip = _parse(space, "f > 10 & g > 3 -> 1")
    boundary = _parse(space, "f == 0 -> 1", "f <= 0 -> 0")
    return (broad, narrow, empty, crossing, narrow_flip, boundary)


# ---------------------------------------------------------------------------
# hypothesis strategies on a deliberately tiny grid

TINY_SPACE = FeatureSpace((Feature("a", 0, 3), Feature("b", 0, 3)))

tiny_points = st.tuples(st.integers(0, 3), st.integers(0, 3))

tiny_predicates = st.builds(
    Predicate,
    feature=st.sampled_from(["a", "b"]),
    op=st.sampled_from(["<", "<=", ">", ">=", "==", "!="]),
    threshold=st.integers(-1, 4),
)

tiny_rules = st.builds(
    Rule,
    itemset=st.lists(tiny_predicates, max_size=2).map(tuple),
    consequent=st.sampled_from(LABELS),
)

tiny_decision_sets = st.lists(tiny_rules, max_size=3).map(DecisionSet.of)

tiny_sequences = st.lists(tiny_decision_sets, max_size=3).map(tuple)
