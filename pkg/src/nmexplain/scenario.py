"""Scenario files: one JSON document wiring a grid, labels, classifier,
explainer, and entailment kind together, with optional query scripts and
property-check requests.

Canonical schema (all rule texts use the grammar from `rules`)::

    {
      "name": "example1",
      "feature_space": {"features": [
          {"name": "f", "min": -20, "max": 20, "step": 1}, ...]},
      "labels": ["0", "1"],
      "classifier": {"kind": "rule_list", "rules": [...], "default": "1"}
                  | {"kind": "table", "entries": [[[x, ...], "label"], ...]},
      "explainer": {"kind": "scripted",
                     "script": [{"history": [[[x, ...], "label"], ...],
                                 "explanations": [["rule", ...], ...]}, ...]}
                 | {"kind": "lifted_pointwise",
                     "table": [{"pair": [[x, ...], "label"],
                                "rules": ["rule", ...]}, ...]}
                 | {"kind": "sufficient_box"},
      "entailment": "naive_union" | "most_sceptically_specific",
      "queries": [[x, ...], ...],                  # optional
      "checks": [{"property": "...", ...}, ...]    # optional
    }

Check requests accept: ``property`` (required), ``relation`` ("io",
"exp" or "entail"), ``max_len``, ``points`` (universe / target
selector), ``unrestricted`` (drop the classifier-consistency restriction
on history pairs), ``pool`` (explicit explanation pool as rule-text
lists), ``sample`` and ``seed``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .classifiers import Classifier, dump_classifier, load_classifier
from .entailment import EntailmentRelation, KINDS, make_relation
from .explainers import (
    Explainer,
    LiftedExplainer,
    PointwiseTable,
    ScriptedExplainer,
    SufficientBoxPointwise,
)
from .properties import (
    SearchBound,
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
from .rules import DecisionSet, Pair
from .space import Feature, FeatureSpace, Point, validate_labels


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    space: FeatureSpace
    labels: tuple[str, ...]
    classifier: Classifier
    explainer: Explainer
    entailment: str
    queries: tuple[Point, ...]
    checks: tuple[dict, ...]
    explainer_config: dict

    def relation(self, override: str | None = None) -> EntailmentRelation:
        return make_relation(override or self.entailment, self.space, self.labels)


def _load_space(payload: dict) -> FeatureSpace:
    feats = tuple(
        Feature(f["name"], int(f["min"]), int(f["max"]), int(f.get("step", 1)))
        for f in payload["features"]
    )
    return FeatureSpace(feats)


def _load_explainer(payload: dict, space: FeatureSpace, labels, classifier) -> Explainer:
    kind = payload.get("kind")
    if kind == "scripted":
        script = {}
        for entry in payload.get("script", []):
            history = tuple(
                (space.check_point(p), str(lab)) for p, lab in entry["history"]
            )
            seq = tuple(
                DecisionSet.parse(texts, space, labels)
                for texts in entry["explanations"]
            )
            script[history] = seq
        return ScriptedExplainer(script)
    if kind == "lifted_pointwise":
        entries: dict[Pair, DecisionSet] = {}
        for entry in payload.get("table", []):
            p, lab = entry["pair"]
            pair = (space.check_point(p), str(lab))
            entries[pair] = DecisionSet.parse(entry["rules"], space, labels)
        return LiftedExplainer(PointwiseTable(space, entries))
    if kind == "sufficient_box":
        return LiftedExplainer(SufficientBoxPointwise(space, classifier))
    raise ScenarioError(f"unknown explainer kind {kind!r}")


def load_scenario(data: dict | str | Path) -> Scenario:
    if not isinstance(data, dict):
        data = json.loads(Path(data).read_text(encoding="utf-8"))
    try:
        space = _load_space(data["feature_space"])
        labels = validate_labels(data["labels"])
        classifier = load_classifier(data["classifier"], space, labels)
        explainer = _load_explainer(data["explainer"], space, labels, classifier)
        entailment = data.get("entailment", "naive_union")
        if entailment not in KINDS:
            raise ScenarioError(f"unknown entailment kind {entailment!r}")
        queries = tuple(space.check_point(q) for q in data.get("queries", []))
        checks = tuple(dict(c) for c in data.get("checks", []))
        return Scenario(
            name=str(data.get("name", "scenario")),
            space=space,
            labels=labels,
            classifier=classifier,
            explainer=explainer,
            entailment=entailment,
            queries=queries,
            checks=checks,
            explainer_config=dict(data["explainer"]),
        )
    except KeyError as exc:
        raise ScenarioError(f"scenario is missing section {exc}") from None


def dump_scenario(scenario: Scenario) -> dict:
    """Normalized dict form; load(dump(s)) is identity on dump(s)."""
    return {
        "name": scenario.name,
        "feature_space": {
            "features": [
                {"name": f.name, "min": f.min, "max": f.max, "step": f.step}
                for f in scenario.space.features
            ]
        },
        "labels": list(scenario.labels),
        "classifier": dump_classifier(scenario.classifier),
        "explainer": scenario.explainer_config,
        "entailment": scenario.entailment,
        "queries": [list(q) for q in scenario.queries],
        "checks": [dict(c) for c in scenario.checks],
    }


# --------------------------------------------------------------------------
# bundled scenarios

def bundled_names() -> list[str]:
    root = resources.files("nmexplain").joinpath("scenarios")
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def load_bundled(name: str) -> Scenario:
    path = resources.files("nmexplain").joinpath("scenarios", f"{name}.json")
    if not path.is_file():
        raise ScenarioError(f"no bundled scenario {name!r} (have {bundled_names()})")
    return load_scenario(json.loads(path.read_text(encoding="utf-8")))


def resolve_scenario(ref: str | dict | Path) -> Scenario:
    """A scenario reference: inline dict, bundled name, or file path."""
    if isinstance(ref, dict):
        return load_scenario(ref)
    if isinstance(ref, str) and not ref.endswith(".json") and "/" not in ref:
        return load_bundled(ref)
    path = Path(ref)
    if not path.is_file():
        raise FileNotFoundError(f"scenario file not found: {path}")
    return load_scenario(path)


def explanation_pool(scenario: Scenario) -> tuple[DecisionSet, ...]:
    """Decision sets appearing in the explainer config, deduplicated in
    order of first appearance."""
    pool: list[DecisionSet] = []

    def add(dset: DecisionSet):
        if dset not in pool:
            pool.append(dset)

    ex = scenario.explainer
    if isinstance(ex, ScriptedExplainer):
        for history in sorted(ex.script, key=lambda h: (len(h), h)):
            for dset in ex.script[history]:
                add(dset)
    elif isinstance(ex, LiftedExplainer) and isinstance(ex.pointwise, PointwiseTable):
        for pair in sorted(ex.pointwise.entries):
            add(ex.pointwise.entries[pair])
    return tuple(pool)


# --------------------------------------------------------------------------
# check dispatch

PROPERTIES = (
    "consistency",
    "respects_specificity",
    "reflexivity",
    "cautious_monotonicity",
    "cut",
    "non_monotonicity",
    "interaction_stability",
)


class UnknownPropertyError(ScenarioError):
    pass


def _parse_points(scenario: Scenario, raw) -> tuple[Point, ...]:
    if raw == "grid":
        return scenario.space.points()
    return tuple(scenario.space.check_point(p) for p in raw)


def _request_points(scenario: Scenario, request: dict) -> tuple[Point, ...]:
    raw = request.get("points")
    if raw is not None:
        return _parse_points(scenario, raw)
    if scenario.queries:
        return scenario.queries
    raise ScenarioError(
        f"check {request.get('property')!r} needs a point selector: "
        "give 'points' or a scenario query script"
    )


def _request_pool(scenario: Scenario, request: dict) -> tuple[DecisionSet, ...]:
    raw = request.get("pool")
    if raw is not None:
        return tuple(
            DecisionSet.parse(texts, scenario.space, scenario.labels) for texts in raw
        )
    pool = explanation_pool(scenario)
    if not pool:
        raise ScenarioError("scenario has no extractable explanation pool; give 'pool'")
    return pool


def run_check(scenario: Scenario, request: dict, entailment: str | None = None) -> Verdict:
    prop = request.get("property")
    if prop not in PROPERTIES:
        raise UnknownPropertyError(
            f"unknown property {prop!r} (known: {', '.join(PROPERTIES)})"
        )
    rel = scenario.relation(entailment)
    bound = SearchBound(
        max_len=int(request.get("max_len", 2)),
        sample=request.get("sample"),
        seed=int(request.get("seed", 0)),
    )

    if prop == "consistency":
        return check_consistency(rel, _request_pool(scenario, request), bound,
                                 points=_optional_points(scenario, request))
    if prop == "respects_specificity":
        return check_respects_specificity(rel, _request_pool(scenario, request), bound,
                                          points=_optional_points(scenario, request))
    if prop == "interaction_stability":
        ex = scenario.explainer
        if isinstance(ex, ScriptedExplainer):
            histories = sorted(ex.script, key=lambda h: (len(h), h))
        else:
            histories = consistent_histories(
                scenario.space, scenario.classifier,
                _request_points_or_grid(scenario, request), bound.max_len,
            )
        return check_interaction_stability(ex, histories)

    relation_name = request.get("relation", "entail" if prop == "non_monotonicity" else "io")
    if relation_name == "entail" and prop in ("reflexivity", "cautious_monotonicity", "cut"):
        raise ScenarioError(
            f"{prop} is defined for homogeneous relations only; use 'io' or 'exp'"
        )
    if relation_name == "io":
        points = _request_points(scenario, request)
        if request.get("unrestricted"):
            universe = all_pairs(scenario.space, scenario.labels, points)
        else:
            universe = consistent_pairs(scenario.space, scenario.classifier, points)
        cr = io_relation(scenario.explainer, rel, universe)
    elif relation_name == "exp":
        cr = exp_relation(rel, _request_pool(scenario, request))
    elif relation_name == "entail":
        cr = entail_relation(rel, _request_pool(scenario, request),
                             target_points=_optional_points(scenario, request))
    else:
        raise ScenarioError(f"unknown relation {relation_name!r} (io, exp or entail)")

    if prop == "reflexivity":
        return check_reflexivity(cr, bound)
    if prop == "cautious_monotonicity":
        return check_cautious_monotonicity(cr, bound)
    if prop == "cut":
        return check_cut(cr, bound)
    return find_nonmonotonicity_witness(cr, bound)


def _optional_points(scenario: Scenario, request: dict) -> tuple[Point, ...] | None:
    raw = request.get("points")
    if raw is None:
        return None
    return _parse_points(scenario, raw)


def _request_points_or_grid(scenario: Scenario, request: dict) -> tuple[Point, ...]:
    raw = request.get("points")
    if raw is not None:
        return _parse_points(scenario, raw)
    return scenario.space.points()


# --------------------------------------------------------------------------
# JSON encoding of verdicts and witnesses

def _encode(value):
    if isinstance(value, DecisionSet):
        return value.rule_texts()
    if isinstance(value, tuple) and len(value) == 2 and isinstance(value[1], str) \
            and isinstance(value[0], tuple):
        return [list(value[0]), value[1]]  # a (point, label) pair
    if isinstance(value, tuple):
        return [_encode(v) for v in value]
    if isinstance(value, list):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    return value


def verdict_to_json(verdict: Verdict) -> dict:
    out = {
        "property": verdict.property,
        "status": verdict.status,
        "bound": verdict.bound,
        "examined": {
            "sequences": verdict.stats.sequences,
            "candidates": verdict.stats.candidates,
        },
    }
    if verdict.witness is not None:
        out["witness"] = _encode(verdict.witness)
    return out


def verdict_ok(verdict: Verdict) -> bool:
    """Exit-code polarity: every property wants holds_up_to_bound except
    the non-monotonicity witness search, which wants a witness."""
    if verdict.property == "non_monotonicity":
        return not verdict.holds
    return verdict.holds
