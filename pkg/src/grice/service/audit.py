"""Batch transcript auditing: replay turns with replies suppressed.

Transcripts are JSON-lines, the trace format minus the engine-produced
fields: an optional header record carrying ``dialogueId``, then one record
per turn with ``speaker``, ``text``, and optionally ``assertions`` (absent
means the trivial free-text extractor runs) and ``timestamp``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from ..dialogue import DialogueModels, UnknownParticipant, Utterance, new_dialogue, replay_utterance
from ..monitor import Assertion, MonitorConfig


class TranscriptMalformed(Exception):
    """The transcript file failed to parse; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class BreachReport:
    """Per-transcript audit summary; counts match the annotation lists."""

    dialogue_id: str
    config: MonitorConfig
    counts: dict[str, int]
    turns: list[dict[str, Any]]

    def to_json(self) -> str:
        payload = {
            "dialogueId": self.dialogue_id,
            "configSnapshot": self.config.to_dict(),
            "counts": self.counts,
            "turns": self.turns,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"audit of dialogue {self.dialogue_id!r}: {len(self.turns)} turns"]
        total = sum(self.counts.values())
        if not total:
            lines.append("no breaches detected")
        else:
            lines.append(f"{total} breach(es):")
            for key in sorted(self.counts):
                lines.append(f"  {key}: {self.counts[key]}")
        for turn in self.turns:
            if not turn["breaches"]:
                continue
            for breach in turn["breaches"]:
                lines.append(
                    f"  turn {turn['index']} ({turn['speaker']}): "
                    f"{breach['maxim']}/{breach['kind']} severity {breach['severity']:.3f} "
                    f"- {breach['evidence']}"
                )
        return "\n".join(lines) + "\n"


def read_transcript(path: str | Path) -> tuple[Optional[str], list[dict[str, Any]]]:
    """Parse a transcript file into (header dialogue id, turn records)."""
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise TranscriptMalformed(0, f"cannot read {path}: {exc}") from None
    dialogue_id: Optional[str] = None
    turns: list[dict[str, Any]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TranscriptMalformed(line_no, f"invalid JSON: {exc}") from None
        if not isinstance(record, dict):
            raise TranscriptMalformed(line_no, "record is not an object")
        if "speaker" not in record and ("dialogueId" in record or "configSnapshot" in record):
            if turns:
                raise TranscriptMalformed(line_no, "header after turn records")
            dialogue_id = record.get("dialogueId")
            continue
        for required in ("speaker", "text"):
            if required not in record:
                raise TranscriptMalformed(line_no, f"turn record missing {required!r}")
        record["_line"] = line_no
        turns.append(record)
    return dialogue_id, turns


def audit_transcript(
    path: str | Path,
    config: MonitorConfig,
    models: DialogueModels,
    dialogue_id: Optional[str] = None,
) -> BreachReport:
    """Replay every turn through the engine with robot replies suppressed."""
    header_id, records = read_transcript(path)
    audit_id = dialogue_id or header_id or "audit"
    state = new_dialogue(config, models, audit_id)
    counts: dict[str, int] = {}
    turns: list[dict[str, Any]] = []
    for record in records:
        line_no = record["_line"]
        try:
            assertions = record.get("assertions")
            utterance = Utterance(
                speaker=record["speaker"],
                text=record["text"],
                assertions=None if assertions is None else tuple(
                    Assertion.from_dict(a) for a in assertions
                ),
                timestamp_ms=record.get("timestamp", 0),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise TranscriptMalformed(line_no, f"bad turn record: {exc}") from None
        try:
            turn, state = replay_utterance(state, utterance, models)
        except UnknownParticipant as exc:
            raise TranscriptMalformed(line_no, str(exc)) from None
        for breach in turn.breaches:
            key = f"{breach.maxim.value}/{breach.kind.value}"
            counts[key] = counts.get(key, 0) + 1
        turns.append({
            "index": turn.index,
            "speaker": turn.utterance.speaker,
            "breaches": [b.to_dict() for b in turn.breaches],
            "acts": [a.to_dict() for a in turn.acts],
        })
    return BreachReport(dialogue_id=audit_id, config=config, counts=counts, turns=turns)
