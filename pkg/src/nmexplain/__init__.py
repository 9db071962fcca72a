"""Reasoning about sequences of rule-based explanations.

Explanations are decision sets over a finite integer grid. A sequence of
them commits the model to outputs at inputs; commitments are read either
naively (union of all rules) or sceptically with specificity overrides.
Bounded checkers probe the derived consequence relations for
reflexivity, cautious monotonicity, cut, non-monotonicity, consistency
and interaction stability, and an interactive session layer tracks
commitment deltas and alerts query by query.
"""
from .space import (
    DEFAULT_GRID_CAP,
    Feature,
    FeatureSpace,
    GridTooLargeError,
    Point,
    SpaceError,
    grid_points,
    validate_labels,
)
from .rules import (
    DecisionSet,
    ExplanationSeq,
    History,
    Pair,
    Predicate,
    Rule,
    RuleError,
    RuleSyntaxError,
    UnknownFeatureError,
    UnknownLabelError,
    coverage,
    parse_rule,
    satisfies,
    serialize_rule,
)
from .classifiers import (
    Classifier,
    ClassifierError,
    RuleListClassifier,
    TableClassifier,
    classify,
    load_classifier,
    materialize,
)
from .explainers import (
    Explainer,
    ExplainerError,
    LiftedExplainer,
    PointwiseTable,
    ScriptedExplainer,
    ScriptMissError,
    SufficientBoxPointwise,
    explain,
    lift,
    point_box_rule,
    sufficient_box_explain,
)
from .entailment import (
    CommitmentMap,
    EntailmentRelation,
    MOST_SCEPTICALLY_SPECIFIC,
    NAIVE_UNION,
    commitments,
    covers_seq,
    derive_exp,
    derive_io,
    entails,
    make_relation,
    more_specific,
    respects_specificity,
)
from .properties import (
    ConsequenceRelation,
    SearchBound,
    SearchStats,
    Verdict,
    all_pairs,
    check_cautious_monotonicity,
    check_consistency,
    check_cut,
    check_interaction_stability,
    check_reflexivity,
    check_respects_specificity,
    consistent_histories,
    consistent_pairs,
    entail_relation,
    exp_relation,
    find_nonmonotonicity_witness,
    io_relation,
)
from .session import Session, StepReport, query, replay, report_line, start_session, transcript_text
from .scenario import (
    Scenario,
    ScenarioError,
    UnknownPropertyError,
    bundled_names,
    dump_scenario,
    explanation_pool,
    load_bundled,
    load_scenario,
    resolve_scenario,
    run_check,
    verdict_ok,
    verdict_to_json,
)

__version__ = "0.1.0"
