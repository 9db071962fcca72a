from __future__ import annotations

import pytest
from hypothesis import given, settings

from nmexplain import (
    DecisionSet,
    Predicate,
    Rule,
    RuleSyntaxError,
    UnknownFeatureError,
    UnknownLabelError,
    coverage,
    grid_points,
    parse_rule,
    satisfies,
    serialize_rule,
)

from conftest import TINY_SPACE, tiny_points, tiny_rules


def test_parse_single_predicate(space, labels):
    rule = parse_rule("f > 0 -> 1", space, labels)
    assert rule == Rule((Predicate("f", ">", 0),), "1")


def test_parse_conjunction(space, labels):
    rule = parse_rule("f > 10 & g > 3 -> 0", space, labels)
    assert rule == Rule((Predicate("f", ">", 10), Predicate("g", ">", 3)), "0")


def test_parse_empty_itemset(space, labels):
    rule = parse_rule("-> 1", space, labels)
    assert rule.itemset == ()
    assert rule.consequent == "1"


def test_malformed_operator_is_a_positioned_syntax_error(space, labels):
    with pytest.raises(RuleSyntaxError) as err:
        parse_rule("f >> 3 -> 1", space, labels)
    assert err.value.position == 3  # the second '>' cannot start a threshold
    assert "column 4" in str(err.value)


@pytest.mark.parametrize(
    "text",
    ["f 3 -> 1", "f > -> 1", "f > 3 & -> 1", "f > 3", "f > 3 -> ", "f > 3 -> 1 extra", "& -> 1"],
)
def test_syntax_errors(space, labels, text):
    with pytest.raises(RuleSyntaxError):
        parse_rule(text, space, labels)


def test_unknown_feature_and_label(space, labels):
    with pytest.raises(UnknownFeatureError):
        parse_rule("h > 0 -> 1", space, labels)
    with pytest.raises(UnknownLabelError):
        parse_rule("f > 0 -> 7", space, labels)


def test_non_integer_threshold(space, labels):
    with pytest.raises(RuleSyntaxError):
        parse_rule("f > x -> 1", space, labels)


def test_negative_thresholds_parse(space, labels):
    rule = parse_rule("g <= -5 -> 0", space, labels)
    assert rule.itemset[0].threshold == -5


@given(rule=tiny_rules)
@settings(max_examples=120)
def test_parse_serialize_round_trip(rule):
    assert parse_rule(serialize_rule(rule), TINY_SPACE, ("0", "1")) == rule


@given(rule=tiny_rules, point=tiny_points)
@settings(max_examples=120)
def test_parser_built_rule_satisfies_like_hand_built(rule, point):
    reparsed = parse_rule(serialize_rule(rule), TINY_SPACE, ("0", "1"))
    assert satisfies(TINY_SPACE, point, reparsed.itemset) == satisfies(
        TINY_SPACE, point, rule.itemset
    )


def test_satisfies_examples(space, labels):
    broad = parse_rule("f > 0 -> 1", space, labels)
    narrow = parse_rule("f > 10 & g > 3 -> 0", space, labels)
    assert satisfies(space, (20, 5), broad.itemset)
    assert satisfies(space, (5, 0), ())  # empty conjunction holds anywhere
    # direct evaluation: 5 > 10 is false, so the conjunction fails
    assert not satisfies(space, (5, 0), narrow.itemset)


def test_coverage_of_broad_rule(space, broad):
    # independent oracle: count grid points with f >= 1 by plain comparisons
    expected = {
        (f, g)
        for f in range(-20, 21)
        for g in range(-20, 21)
        if f > 0
    }
    assert len(expected) == 20 * 41 == 820
    assert coverage((broad,), space) == frozenset(expected)


def test_coverage_of_empty_decision_set(space):
    assert coverage((DecisionSet.of([]),), space) == frozenset()


def test_narrow_rule_coverage_is_inside_broad(space, broad, narrow):
    assert coverage((narrow,), space) <= coverage((broad,), space)


def test_coverage_is_union_of_rule_coverages(space, labels):
    left = DecisionSet.parse(["f > 15 -> 1"], space, labels)
    right = DecisionSet.parse(["g < -15 -> 0"], space, labels)
    both = DecisionSet.parse(["f > 15 -> 1", "g < -15 -> 0"], space, labels)
    assert coverage((both,), space) == coverage((left,), space) | coverage((right,), space)
    assert coverage((left, right), space) == coverage((both,), space)


@given(rules_a=tiny_rules, rules_b=tiny_rules)
@settings(max_examples=60)
def test_coverage_monotone_under_append(rules_a, rules_b):
    a = DecisionSet.of([rules_a])
    b = DecisionSet.of([rules_b])
    assert coverage((a,), TINY_SPACE) <= coverage((a, b), TINY_SPACE)


def test_decision_set_deduplicates(space, labels):
    d = DecisionSet.parse(["f > 0 -> 1", "f > 0 -> 1"], space, labels)
    assert len(d) == 1


def test_rule_texts_are_sorted_and_stable(space, labels):
    d = DecisionSet.parse(["g > 0 -> 0", "f > 0 -> 1"], space, labels)
    assert d.rule_texts() == ["f > 0 -> 1", "g > 0 -> 0"]


def test_every_scenario_point_is_on_grid(space):
    pts = set(grid_points(space))
    for q in [(5, 0), (20, 5), (20, -10), (11, 4)]:
        assert q in pts
