"""Dialogue management: state, recovery policy, and the turn engine."""

from .engine import (
    DEFAULT_MODE,
    append_acts,
    apply_mode_switch,
    classify_acts,
    default_dialogue_grammar,
    default_models,
    handle_turn,
    load_reply_templates,
    load_resource_text,
    new_dialogue,
    render_reply,
    replay_utterance,
    sha256_text,
    turn_seed,
)
from .policy import decide_acts
from .state import (
    ACT_SYMBOL,
    ActTag,
    DialogueClosed,
    DialogueError,
    DialogueModels,
    DialogueState,
    ModelMissing,
    NotYourTurn,
    Participant,
    RecoveryAct,
    Role,
    TraceCorrupt,
    Turn,
    UnknownParticipant,
    Utterance,
)
from .trace import replay_trace, serialize_trace, turn_record

__all__ = [
    "ACT_SYMBOL",
    "ActTag",
    "DEFAULT_MODE",
    "DialogueClosed",
    "DialogueError",
    "DialogueModels",
    "DialogueState",
    "ModelMissing",
    "NotYourTurn",
    "Participant",
    "RecoveryAct",
    "Role",
    "TraceCorrupt",
    "Turn",
    "UnknownParticipant",
    "Utterance",
    "append_acts",
    "apply_mode_switch",
    "classify_acts",
    "decide_acts",
    "default_dialogue_grammar",
    "default_models",
    "handle_turn",
    "load_reply_templates",
    "load_resource_text",
    "new_dialogue",
    "render_reply",
    "replay_trace",
    "replay_utterance",
    "serialize_trace",
    "sha256_text",
    "turn_record",
    "turn_seed",
]
