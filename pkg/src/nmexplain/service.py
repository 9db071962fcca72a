"""JSON/HTTP service over sessions and property checks.

State is an in-memory session table keyed by opaque ids; a session's
queries are serialized by a per-session lock. Everything else is
stateless, and all payloads are produced by the same serializers the CLI
uses, so transcripts are byte-identical across the two front ends.
"""
from __future__ import annotations

import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .explainers import ScriptMissError
from .scenario import (
    Scenario,
    ScenarioError,
    UnknownPropertyError,
    bundled_names,
    load_bundled,
    resolve_scenario,
    run_check,
    verdict_ok,
    verdict_to_json,
)
from .session import Session, query, start_session, transcript_text
from .space import GridTooLargeError, SpaceError


class CreateSessionBody(BaseModel):
    scenario: str | dict
    entailment: str | None = None


class QueryBody(BaseModel):
    x: list[int]


class CheckBody(BaseModel):
    scenario: str | dict
    property: str
    bound: dict | None = None
    entailment: str | None = None


def _scenario_meta(scenario: Scenario) -> dict:
    return {
        "name": scenario.name,
        "features": [
            {"name": f.name, "min": f.min, "max": f.max, "step": f.step}
            for f in scenario.space.features
        ],
        "labels": list(scenario.labels),
        "entailment": scenario.entailment,
        "queries": [list(q) for q in scenario.queries],
        "checks": [dict(c) for c in scenario.checks],
    }


def create_app() -> FastAPI:
    app = FastAPI(title="nmexplain")
    sessions: dict[str, tuple[Session, threading.Lock]] = {}

    def get_session(session_id: str) -> tuple[Session, threading.Lock]:
        try:
            return sessions[session_id]
        except KeyError:
            raise HTTPException(404, f"no session {session_id}") from None

    @app.get("/scenarios")
    def scenarios():
        return {"scenarios": [_scenario_meta(load_bundled(n)) for n in bundled_names()]}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        try:
            scenario = resolve_scenario(body.scenario)
            session = start_session(scenario, entailment=body.entailment)
        except (ScenarioError, GridTooLargeError, FileNotFoundError, ValueError) as exc:
            raise HTTPException(400, str(exc)) from None
        session_id = uuid.uuid4().hex
        sessions[session_id] = (session, threading.Lock())
        meta = _scenario_meta(scenario)
        meta["entailment"] = session.relation.kind
        return {"session_id": session_id, "scenario": meta}

    @app.get("/sessions/{session_id}")
    def session_info(session_id: str):
        session, _ = get_session(session_id)
        meta = _scenario_meta(session.scenario)
        meta["entailment"] = session.relation.kind
        return {
            "session_id": session_id,
            "scenario": meta,
            "step": session.step,
            "history": [[list(x), y] for x, y in session.history],
        }

    @app.post("/sessions/{session_id}/query")
    def session_query(session_id: str, body: QueryBody):
        session, lock = get_session(session_id)
        with lock:
            try:
                report = query(session, tuple(body.x))
            except SpaceError as exc:
                raise HTTPException(400, str(exc)) from None
            except ScriptMissError as exc:
                raise HTTPException(409, str(exc)) from None
        return report.to_json()

    @app.get("/sessions/{session_id}/transcript")
    def session_transcript(session_id: str):
        session, _ = get_session(session_id)
        return PlainTextResponse(transcript_text(session.reports))

    @app.get("/sessions/{session_id}/commitments")
    def session_commitments(session_id: str):
        session, _ = get_session(session_id)
        entries = session.commitments.entries
        order = {lab: i for i, lab in enumerate(session.scenario.labels)}
        return {
            "step": session.step,
            "entries": [
                [list(x), sorted(entries[x], key=order.get)] for x in sorted(entries)
            ],
        }

    @app.post("/checks")
    def checks(body: CheckBody):
        request = dict(body.bound or {})
        request["property"] = body.property
        try:
            scenario = resolve_scenario(body.scenario)
            verdict = run_check(scenario, request, entailment=body.entailment)
        except UnknownPropertyError as exc:
            raise HTTPException(422, str(exc)) from None
        except (ScenarioError, GridTooLargeError, FileNotFoundError, ValueError) as exc:
            raise HTTPException(400, str(exc)) from None
        payload = verdict_to_json(verdict)
        payload["ok"] = verdict_ok(verdict)
        return payload

    ui_dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dist.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dist, html=True), name="ui")

    return app
