"""Per-dialogue session store with append-only JSON-lines persistence.

Requests for the same dialogue are serialized by a per-session lock; the
trace file gains one line per processed turn, flushed and fsynced before
the turn is acknowledged, so a killed and restarted process still serves
every acknowledged turn.
"""

from __future__ import annotations

import json
import os
import re
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

from ..dialogue import (
    DialogueModels,
    DialogueState,
    RecoveryAct,
    Turn,
    Utterance,
    handle_turn,
    new_dialogue,
    replay_trace,
    serialize_trace,
    turn_record,
)
from ..monitor import MonitorConfig

_SAFE_ID = re.compile(r"[A-Za-z0-9_-]+\Z")


class DialogueNotFound(KeyError):
    pass


@dataclass
class _Session:
    state: DialogueState
    path: Path
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, data_dir: Path | str, models: DialogueModels, base_config: MonitorConfig):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.models = models
        self.base_config = base_config
        self._registry_lock = threading.Lock()
        self._sessions: dict[str, _Session] = {}

    def create(self, overrides: Optional[Mapping[str, Any]] = None) -> DialogueState:
        config = self.base_config.with_overrides(overrides or {})
        dialogue_id = uuid.uuid4().hex
        state = new_dialogue(config, self.models, dialogue_id)
        session = _Session(state, self.data_dir / f"{dialogue_id}.jsonl")
        with self._registry_lock:
            self._sessions[dialogue_id] = session
        self._rewrite(session)
        return state

    def get(self, dialogue_id: str) -> _Session:
        with self._registry_lock:
            session = self._sessions.get(dialogue_id)
        if session is not None:
            return session
        session = self._load_from_disk(dialogue_id)
        if session is None:
            raise DialogueNotFound(dialogue_id)
        with self._registry_lock:
            return self._sessions.setdefault(dialogue_id, session)

    def post_turn(
        self, dialogue_id: str, utterance: Utterance
    ) -> tuple[Turn, tuple[RecoveryAct, ...], Optional[Utterance], DialogueState]:
        session = self.get(dialogue_id)
        with session.lock:
            before = len(session.state.turns)
            turn, acts, reply, new_state = handle_turn(session.state, utterance, self.models)
            self._append(session, new_state.turns[before:])
            session.state = new_state
        return turn, acts, reply, new_state

    def trace_document(self, dialogue_id: str) -> str:
        session = self.get(dialogue_id)
        with session.lock:
            return serialize_trace(session.state, self.models)

    def _load_from_disk(self, dialogue_id: str) -> Optional[_Session]:
        if not _SAFE_ID.match(dialogue_id):
            return None
        path = self.data_dir / f"{dialogue_id}.jsonl"
        if not path.exists():
            return None
        state = replay_trace(path.read_text("utf-8"), self.models)
        return _Session(state, path)

    def _rewrite(self, session: _Session) -> None:
        text = serialize_trace(session.state, self.models)
        with open(session.path, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())

    def _append(self, session: _Session, turns) -> None:
        with open(session.path, "a", encoding="utf-8") as fh:
            for turn in turns:
                fh.write(json.dumps(turn_record(turn), sort_keys=True, separators=(",", ":")) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
