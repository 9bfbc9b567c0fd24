"""HTTP/JSON API over the dialogue engine.

Endpoints (all bodies UTF-8 JSON):

    GET  /healthz                     -> {"status": "ok"}
    POST /v1/dialogues                -> 201 {"id": ...}; body = optional
                                         monitor-config overrides
    POST /v1/dialogues/{id}/turns     -> 200 turn annotations + robot reply
    GET  /v1/dialogues/{id}           -> the full trace document (JSON lines)
    GET  /v1/dialogues/{id}/topics    -> current context distribution + stack

Errors are machine-readable: {"error": {"code", "message"}}.
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from ..dialogue import (
    DialogueClosed,
    DialogueError,
    NotYourTurn,
    UnknownParticipant,
    Utterance,
)
from ..monitor import Assertion, ConfigInvalid
from .config import ServerConfig, load_models
from .store import DialogueNotFound, SessionStore


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def turn_response(turn, acts, reply, state) -> dict[str, Any]:
    return {
        "turnIndex": turn.index,
        "breaches": [b.to_dict() for b in turn.breaches],
        "acts": [a.to_dict() for a in acts],
        "reply": {"speaker": reply.speaker, "text": reply.text} if reply is not None else None,
        "blackboard": " ".join(s.name for s in state.blackboard),
        "modes": state.modes,
    }


def create_app(cfg: ServerConfig) -> FastAPI:
    models = load_models(cfg)
    store = SessionStore(cfg.data_dir, models, cfg.monitor)

    app = FastAPI(title="grice", docs_url=None, redoc_url=None)
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/v1/dialogues", status_code=201)
    async def create_dialogue(request: Request) -> Any:
        import json

        raw = await request.body()
        if raw:
            try:
                body = json.loads(raw)
            except json.JSONDecodeError as exc:
                return _error(422, "invalid_request", f"body is not valid JSON: {exc}")
        else:
            body = {}
        if not isinstance(body, dict):
            return _error(422, "invalid_request", "config overrides must be an object")
        try:
            state = store.create(body)
        except ConfigInvalid as exc:
            return _error(422, "config_invalid", str(exc))
        return JSONResponse(status_code=201, content={"id": state.id})

    @app.post("/v1/dialogues/{dialogue_id}/turns")
    def post_turn(dialogue_id: str, body: dict) -> Any:
        speaker = body.get("speaker")
        text = body.get("text")
        if not isinstance(speaker, str) or not isinstance(text, str):
            return _error(422, "invalid_request", "turn needs string 'speaker' and 'text'")
        assertions: Optional[tuple[Assertion, ...]] = None
        if "assertions" in body and body["assertions"] is not None:
            try:
                assertions = tuple(Assertion.from_dict(a) for a in body["assertions"])
            except (TypeError, KeyError, ValueError) as exc:
                return _error(422, "invalid_request", f"bad assertion: {exc}")
        utterance = Utterance(
            speaker=speaker, text=text, assertions=assertions,
            timestamp_ms=int(body.get("timestamp", 0)),
        )
        try:
            turn, acts, reply, state = store.post_turn(dialogue_id, utterance)
        except DialogueNotFound:
            return _error(404, "dialogue_not_found", f"no dialogue {dialogue_id!r}")
        except NotYourTurn as exc:
            return _error(409, "not_your_turn", str(exc))
        except DialogueClosed as exc:
            return _error(409, "dialogue_closed", str(exc))
        except UnknownParticipant as exc:
            return _error(422, "unknown_participant", str(exc))
        return turn_response(turn, acts, reply, state)

    @app.get("/v1/dialogues/{dialogue_id}")
    def get_trace(dialogue_id: str) -> Any:
        try:
            document = store.trace_document(dialogue_id)
        except DialogueNotFound:
            return _error(404, "dialogue_not_found", f"no dialogue {dialogue_id!r}")
        return PlainTextResponse(document, media_type="application/x-ndjson")

    @app.get("/v1/dialogues/{dialogue_id}/topics")
    def get_topics(dialogue_id: str) -> Any:
        try:
            session = store.get(dialogue_id)
        except DialogueNotFound:
            return _error(404, "dialogue_not_found", f"no dialogue {dialogue_id!r}")
        with session.lock:
            state = session.state
        return {
            "contextTheta": list(state.context_theta) if state.context_theta else [],
            "topicStack": list(state.topic_stack),
        }

    @app.exception_handler(DialogueError)
    def dialogue_error(_request: Request, exc: DialogueError) -> JSONResponse:
        return _error(500, "dialogue_error", str(exc))

    return app
