"""Dialogue trace documents: JSON-lines, one record per turn.

Record 0 is the header (dialogue id, config snapshot, grammar and model
hashes); every following record is one turn with its breaches, acts, the
block it appended, the blackboard after it, and the mode assignments.
Replaying a document re-applies every recorded block from the axiom and
rebuilds beliefs from the commit rule, so a valid trace reconstructs the
exact final state without consulting any model.
"""

from __future__ import annotations

import json
from dataclasses import replace
from typing import Optional

from ..grammar import (
    Cdgs,
    DerivationMode,
    GrammarError,
    Production,
    SententialForm,
    TraceBlock,
    TraceStep,
    apply_production,
)
from ..monitor import (
    Assertion,
    BeliefStore,
    BreachEvent,
    ConfigInvalid,
    ContradictionRejected,
    MonitorConfig,
)
from .engine import DEFAULT_MODE
from .state import (
    ActTag,
    DialogueModels,
    DialogueState,
    Participant,
    RecoveryAct,
    Role,
    TraceCorrupt,
    Turn,
    UnknownParticipant,
    Utterance,
)


def turn_record(turn: Turn) -> dict:
    return {
        "index": turn.index,
        "speaker": turn.utterance.speaker,
        "text": turn.utterance.text,
        "timestamp": turn.utterance.timestamp_ms,
        "assertions": [a.to_dict() for a in (turn.utterance.assertions or ())],
        "breaches": [b.to_dict() for b in turn.breaches],
        "acts": [_act_record(turn, act) for act in turn.acts],
        "actSymbols": list(turn.act_symbols),
        "block": _block_record(turn.block),
        "blackboardAfter": [s.name for s in turn.blackboard_after],
        "modes": {pid: mode for pid, mode in turn.modes_after},
        "contextTheta": list(turn.context_after) if turn.context_after is not None else None,
        "topicStack": list(turn.stack_after),
    }


def _act_record(turn: Turn, act: RecoveryAct) -> dict:
    record = act.to_dict()
    record["triggeredBy"] = turn.breaches.index(act.triggered_by)
    return record


def _block_record(block: Optional[TraceBlock]) -> Optional[dict]:
    if block is None:
        return None
    return {
        "componentId": block.component_id,
        "mode": str(block.mode),
        "steps": [
            {
                "lhs": step.production.lhs.name,
                "rhs": [s.name for s in step.production.rhs],
                "position": step.position,
            }
            for step in block.steps
        ],
    }


def serialize_trace(state: DialogueState, models: DialogueModels) -> str:
    """The dialogue as a JSON-lines document (header + one line per turn)."""
    header = {
        "dialogueId": state.id,
        "configSnapshot": state.config.to_dict(),
        "grammarHash": models.grammar_hash,
        "modelHash": models.model_hash,
    }
    lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
    for turn in state.turns:
        lines.append(json.dumps(turn_record(turn), sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def replay_trace(document: str, models: DialogueModels) -> DialogueState:
    """Rebuild and validate a DialogueState from a trace document.

    Raises TraceCorrupt (with the first offending record index) on parse
    failures, index gaps, blocks that do not replay from the previous
    blackboard, or recorded blackboards that disagree with the replay.
    """
    lines = [line for line in document.splitlines() if line.strip()]
    if not lines:
        raise TraceCorrupt(0, "empty document")

    header = _parse_record(lines[0], 0)
    for key in ("dialogueId", "configSnapshot", "grammarHash", "modelHash"):
        if key not in header:
            raise TraceCorrupt(0, f"header missing {key!r}")
    if header["grammarHash"] != models.grammar_hash:
        raise TraceCorrupt(0, "grammarHash does not match the loaded dialogue grammar")
    try:
        config = MonitorConfig.from_dict(header["configSnapshot"])
    except ConfigInvalid as exc:
        raise TraceCorrupt(0, f"bad config snapshot: {exc}") from None

    grammar = models.dialogue_grammar
    participants = tuple(
        Participant(role.value, role, role.value, DEFAULT_MODE)
        for role in (Role.HUMAN, Role.ROBOT)
    )
    roles = {p.id: p.role for p in participants}

    turns: list[Turn] = []
    blackboard = grammar.axiom_form
    beliefs = BeliefStore.empty()
    for record_index, line in enumerate(lines[1:], start=1):
        record = _parse_record(line, record_index)
        turn, blackboard = _rebuild_turn(record, record_index, grammar, blackboard)
        if turn.index != record_index - 1:
            raise TraceCorrupt(record_index, f"expected turn index {record_index - 1}, found {turn.index}")
        if turn.utterance.speaker not in roles:
            raise TraceCorrupt(record_index, f"unknown speaker {turn.utterance.speaker!r}")
        turns.append(turn)
        if roles[turn.utterance.speaker] is Role.HUMAN and not turn.breaches:
            try:
                beliefs = beliefs.commit(turn.utterance.assertions or ())
            except ContradictionRejected as exc:
                raise TraceCorrupt(record_index, f"belief replay failed: {exc}") from None

    if turns:
        final_modes = dict(turns[-1].modes_after)
        try:
            participants = tuple(
                replace(p, current_mode=DerivationMode.parse(final_modes[p.id]))
                for p in participants
            )
        except (KeyError, GrammarError) as exc:
            raise TraceCorrupt(len(turns), f"bad final mode assignment: {exc}") from None

    return DialogueState(
        id=header["dialogueId"],
        config=config,
        participants=participants,
        turns=tuple(turns),
        blackboard=blackboard,
        context_theta=turns[-1].context_after if turns else None,
        topic_stack=turns[-1].stack_after if turns else (),
        beliefs=beliefs,
        floor="human",
    )


def _parse_record(line: str, index: int) -> dict:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceCorrupt(index, f"invalid JSON: {exc}") from None
    if not isinstance(record, dict):
        raise TraceCorrupt(index, "record is not an object")
    return record


def _rebuild_turn(
    record: dict,
    record_index: int,
    grammar: Cdgs,
    blackboard: SententialForm,
) -> tuple[Turn, SententialForm]:
    try:
        assertions = tuple(Assertion.from_dict(a) for a in record.get("assertions", []))
        breaches = tuple(BreachEvent.from_dict(b) for b in record.get("breaches", []))
        acts = tuple(_rebuild_act(a, breaches) for a in record.get("acts", []))
        utterance = Utterance(
            speaker=record["speaker"],
            text=record["text"],
            assertions=assertions,
            timestamp_ms=record.get("timestamp", 0),
        )
        recorded_board = tuple(grammar.symbol(name) for name in record["blackboardAfter"])
        block = _rebuild_block(record.get("block"), grammar, recorded_board)
        context = record.get("contextTheta")
        turn = Turn(
            index=record["index"],
            utterance=utterance,
            breaches=breaches,
            acts=acts,
            act_symbols=tuple(record.get("actSymbols", [])),
            block=block,
            blackboard_after=recorded_board,
            modes_after=tuple(sorted((pid, mode) for pid, mode in record["modes"].items())),
            context_after=tuple(context) if context is not None else None,
            stack_after=tuple(record.get("topicStack", [])),
        )
    except TraceCorrupt:
        raise
    except (KeyError, ValueError, TypeError, GrammarError) as exc:
        raise TraceCorrupt(record_index, f"malformed turn record: {exc}") from None

    replayed = blackboard
    if block is not None:
        try:
            for step in block.steps:
                replayed = apply_production(replayed, step.production, step.position)
        except GrammarError as exc:
            raise TraceCorrupt(record_index, f"block does not replay: {exc}") from None
    if replayed != turn.blackboard_after:
        raise TraceCorrupt(record_index, "recorded blackboard disagrees with replay")
    return turn, replayed


def _rebuild_act(record: dict, breaches: tuple[BreachEvent, ...]) -> RecoveryAct:
    trigger_index = record["triggeredBy"]
    if not (0 <= trigger_index < len(breaches)):
        raise ValueError(f"act trigger index {trigger_index} out of range")
    mode_switch = None
    if record.get("modeSwitch"):
        mode_switch = (
            record["modeSwitch"]["participant"],
            DerivationMode.parse(record["modeSwitch"]["mode"]),
        )
    return RecoveryAct(ActTag(record["tag"]), breaches[trigger_index], mode_switch)


def _rebuild_block(
    record: Optional[dict], grammar: Cdgs, result: SententialForm
) -> Optional[TraceBlock]:
    if record is None:
        return None
    steps = []
    for step in record["steps"]:
        lhs = grammar.symbol(step["lhs"])
        rhs = tuple(grammar.symbol(n) for n in step["rhs"])
        steps.append(TraceStep(Production(lhs, rhs), step["position"]))
    return TraceBlock(
        component_id=record["componentId"],
        mode=DerivationMode.parse(record["mode"]),
        steps=tuple(steps),
        result=result,
    )
