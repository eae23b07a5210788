"""HTTP session API for interactive closed-loop steering.

Each session pairs a composed plant with a supervisor and owns one loop
state plus an undo stack; step/undo are serialized per session.  Responses
mirror the domain types field-for-field with canonically sorted lists.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import model_io
from .automata import Automaton
from .control import ControlDecision, LoopState, decide_at, initial_state
from .errors import (
    DisabledBySupervisor,
    ForcesynthError,
    ModelError,
    NotEligibleInPlant,
)


class SessionCreate(BaseModel):
    model: dict
    supervisor: dict | None = None


class StepRequest(BaseModel):
    event: str


@dataclass
class Session:
    id: str
    plant: Automaton
    supervisor: Automaton
    forcing_states: frozenset[str]
    loop: LoopState
    undo_stack: list[LoopState] = field(default_factory=list)
    decision_cache: dict[tuple[str, str], ControlDecision] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def decision(self) -> ControlDecision:
        key = (self.loop.plant_state, self.loop.sup_state)
        cached = self.decision_cache.get(key)
        if cached is None:
            cached = decide_at(
                self.supervisor, self.plant, key[0], key[1], self.forcing_states
            )
            self.decision_cache[key] = cached
        return cached

    def view(self) -> dict[str, Any]:
        d = self.decision()
        return {
            "id": self.id,
            "plant_state": self.loop.plant_state,
            "sup_state": self.loop.sup_state,
            "history": list(self.loop.history),
            "eligible": sorted(self.plant.out(self.loop.plant_state)),
            "marked": self.loop.sup_state in self.supervisor.marked,
            "can_undo": bool(self.undo_stack),
            "decision": {
                "mode": d.mode,
                "allowed": sorted(d.allowed),
                "disabled": sorted(d.disabled),
                "preempted": sorted(d.preempted),
            },
        }


def _conflict(kind: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=409, content={"error_kind": kind, "message": message})


def _not_found(what: str) -> JSONResponse:
    return JSONResponse(status_code=404, content={"error_kind": "not_found", "message": what})


def create_app(ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="forcesynth", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, Session] = {}

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        try:
            model = model_io.from_obj(body.model)
            plant = model_io.build_plant(model)
            sup_model = model_io.from_obj(body.supervisor) if body.supervisor else model
            sups = sup_model.of_kind("supervisor")
            if not sups:
                raise ModelError("no supervisor automaton provided")
            entry = sups[0]
        except ForcesynthError as exc:
            return JSONResponse(status_code=422, content={"message": str(exc)})
        session = Session(
            id=uuid.uuid4().hex,
            plant=plant,
            supervisor=entry.automaton,
            forcing_states=entry.forcing_states,
            loop=initial_state(entry.automaton, plant),
        )
        sessions[session.id] = session
        return session.view()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _not_found(f"unknown session: {session_id}")
        with session.lock:
            return session.view()

    @app.post("/sessions/{session_id}/step")
    def step_session(session_id: str, body: StepRequest):
        session = sessions.get(session_id)
        if session is None:
            return _not_found(f"unknown session: {session_id}")
        with session.lock:
            decision = session.decision()
            if body.event not in decision.allowed:
                return _conflict(
                    DisabledBySupervisor.kind, f"disabled by supervisor: {body.event!r}"
                )
            plant_next = session.plant.target(session.loop.plant_state, body.event)
            if plant_next is None:
                return _conflict(
                    NotEligibleInPlant.kind, f"not eligible in plant: {body.event!r}"
                )
            sup_next = session.supervisor.target(session.loop.sup_state, body.event)
            if sup_next is None:
                return _conflict(
                    "desynchronized",
                    f"supervisor cannot follow {body.event!r}",
                )
            session.undo_stack.append(session.loop)
            session.loop = LoopState(
                plant_next, sup_next, session.loop.history + (body.event,)
            )
            return session.view()

    @app.post("/sessions/{session_id}/undo")
    def undo_session(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _not_found(f"unknown session: {session_id}")
        with session.lock:
            if not session.undo_stack:
                return _conflict("history_empty", "nothing to undo")
            session.loop = session.undo_stack.pop()
            return session.view()

    @app.get("/models/{session_id}/graph")
    def model_graph(session_id: str, which: str = "supervisor"):
        session = sessions.get(session_id)
        if session is None:
            return _not_found(f"unknown session: {session_id}")
        if which == "plant":
            text = model_io.to_dot(session.plant)
        else:
            text = model_io.to_dot(
                session.supervisor,
                session.forcing_states,
                current=session.loop.sup_state,
            )
        return PlainTextResponse(text)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
