from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmexplain import (
    ClassifierError,
    Feature,
    FeatureSpace,
    TableClassifier,
    classify,
    grid_points,
    load_bundled,
    load_classifier,
    materialize,
)

from conftest import TINY_SPACE


@pytest.fixture(scope="module")
def example1():
    return load_bundled("example1")


def test_scenario_classifier_matches_observed_outputs(example1):
    clf, space = example1.classifier, example1.space
    assert classify(clf, space, (5, 0)) == "1"
    assert classify(clf, space, (20, 5)) == "0"


def test_rule_list_first_match_then_default(example1):
    clf, space = example1.classifier, example1.space
    # oracle: evaluate the single rule by hand over a spread of points
    for f in (-20, 0, 5, 10, 11, 20):
        for g in (-20, 0, 3, 4, 20):
            expected = "0" if (f > 10 and g > 3) else "1"
            assert classify(clf, space, (f, g)) == expected


def test_constant_table_classifier():
    space = FeatureSpace((Feature("f", 0, 2),))
    clf = TableClassifier({p: "1" for p in grid_points(space)})
    assert all(classify(clf, space, p) == "1" for p in grid_points(space))


def test_rule_list_agrees_with_materialized_table(example1):
    clf, space = example1.classifier, example1.space
    table = materialize(clf, space)
    for p in grid_points(space):
        assert classify(table, space, p) == classify(clf, space, p)


def test_classify_is_deterministic_on_replay(example1):
    clf, space = example1.classifier, example1.space
    pts = grid_points(space)[::37]
    first = [classify(clf, space, p) for p in pts]
    second = [classify(clf, space, p) for p in pts]
    assert first == second


def test_table_loading_and_totality():
    space_payload = {"kind": "table", "entries": [[[0], "0"], [[1], "1"], [[2], "0"]]}
    space = FeatureSpace((Feature("f", 0, 2),))
    clf = load_classifier(space_payload, space, ("0", "1"))
    assert classify(clf, space, (1,)) == "1"


def test_partial_table_error_names_missing_point():
    space = FeatureSpace((Feature("f", 0, 2),))
    payload = {"kind": "table", "entries": [[[0], "0"], [[2], "0"]]}
    with pytest.raises(ClassifierError) as err:
        load_classifier(payload, space, ("0", "1"))
    assert "(1,)" in str(err.value)


def test_rule_list_load_rejects_unknown_names():
    space = FeatureSpace((Feature("f", 0, 2),))
    with pytest.raises(Exception):
        load_classifier(
            {"kind": "rule_list", "rules": ["h > 0 -> 1"], "default": "0"},
            space,
            ("0", "1"),
        )
    with pytest.raises(ClassifierError):
        load_classifier({"kind": "rule_list", "rules": [], "default": "9"}, space, ("0", "1"))
    with pytest.raises(ClassifierError):
        load_classifier({"kind": "bogus"}, space, ("0", "1"))


@given(
    default=st.sampled_from(["0", "1"]),
    threshold=st.integers(0, 3),
)
@settings(max_examples=30)
def test_rule_list_total_on_tiny_grid(default, threshold):
    payload = {"kind": "rule_list", "rules": [f"a > {threshold} -> 1"], "default": default}
    clf = load_classifier(payload, TINY_SPACE, ("0", "1"))
    for p in grid_points(TINY_SPACE):
        got = classify(clf, TINY_SPACE, p)
        assert got == ("1" if p[0] > threshold else default)
