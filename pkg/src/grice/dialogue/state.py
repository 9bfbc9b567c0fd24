"""Dialogue state: participants as grammar components over a shared
blackboard of dialogue-act symbols, plus the per-turn records.

A turn appends act symbols by rewriting the open nonterminal of the
blackboard through the speaker's component, under that participant's
current derivation mode; natural-language text rides along as payload.
All state objects are immutable snapshots: the engine returns new states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional, Sequence

from ..grammar import Cdgs, DerivationMode, SententialForm, TraceBlock
from ..monitor import Assertion, BeliefStore, BreachEvent, MonitorConfig
from ..topics import TopicModel, words


class DialogueError(Exception):
    """Base class for dialogue-level failures."""


class NotYourTurn(DialogueError):
    """The utterance's speaker does not hold the floor."""


class UnknownParticipant(DialogueError):
    """The referenced participant id is not registered."""


class DialogueClosed(DialogueError):
    """The blackboard has no open nonterminal left (someone said bye)."""


class ModelMissing(DialogueError):
    """A required model artifact (topic model, grammar, templates) is absent."""


class TraceCorrupt(DialogueError):
    """A trace document failed validation; ``index`` is the first offending
    record (0 is the header)."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"record {index}: {message}")


class Role(Enum):
    HUMAN = "human"
    ROBOT = "robot"


class ActTag(Enum):
    INTERRUPT = "Interrupt"
    ASK_FOR_MORE = "AskForMore"
    FOLLOW_NEW_TOPIC = "FollowNewTopic"
    RESUME_PREVIOUS_TOPIC = "ResumePreviousTopic"
    CLARIFY = "Clarify"
    CHALLENGE = "Challenge"


# blackboard act symbol a recovery act contributes when the robot replies
ACT_SYMBOL = {
    ActTag.INTERRUPT: "interrupt",
    ActTag.ASK_FOR_MORE: "askMore",
    ActTag.FOLLOW_NEW_TOPIC: "follow",
    ActTag.RESUME_PREVIOUS_TOPIC: "resume",
    ActTag.CLARIFY: "clarify",
    ActTag.CHALLENGE: "challenge",
}


@dataclass(frozen=True)
class RecoveryAct:
    tag: ActTag
    triggered_by: BreachEvent
    mode_switch: Optional[tuple[str, DerivationMode]] = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"tag": self.tag.value}
        if self.mode_switch is not None:
            participant, mode = self.mode_switch
            out["modeSwitch"] = {"participant": participant, "mode": str(mode)}
        return out


@dataclass(frozen=True)
class Utterance:
    speaker: str
    text: str
    assertions: Optional[tuple[Assertion, ...]] = None
    timestamp_ms: int = 0

    @property
    def tokens(self) -> list[str]:
        return words(self.text)


@dataclass(frozen=True)
class Participant:
    id: str
    role: Role
    component_id: str
    current_mode: DerivationMode


@dataclass(frozen=True)
class Turn:
    """One processed utterance with everything the engine decided about it.

    ``act_symbols`` is what actually landed on the blackboard (the mode may
    have cut the list short); the *_after fields snapshot the state so that
    traces replay without re-running any model.
    """

    index: int
    utterance: Utterance
    breaches: tuple[BreachEvent, ...]
    acts: tuple[RecoveryAct, ...]
    act_symbols: tuple[str, ...]
    block: Optional[TraceBlock]
    blackboard_after: SententialForm
    modes_after: tuple[tuple[str, str], ...]
    context_after: Optional[tuple[float, ...]]
    stack_after: tuple[int, ...]


@dataclass(frozen=True)
class DialogueState:
    id: str
    config: MonitorConfig
    participants: tuple[Participant, ...]
    turns: tuple[Turn, ...] = ()
    blackboard: SententialForm = ()
    context_theta: Optional[tuple[float, ...]] = None
    topic_stack: tuple[int, ...] = ()
    beliefs: BeliefStore = field(default_factory=BeliefStore.empty)
    floor: str = "human"

    def participant(self, participant_id: str) -> Participant:
        for p in self.participants:
            if p.id == participant_id:
                return p
        raise UnknownParticipant(f"no participant {participant_id!r}")

    @property
    def closed(self) -> bool:
        return all(not s.is_nonterminal for s in self.blackboard)

    @property
    def modes(self) -> dict[str, str]:
        return {p.id: str(p.current_mode) for p in self.participants}


@dataclass(frozen=True)
class DialogueModels:
    """Read-only artifacts one dialogue consults."""

    topic_model: TopicModel
    ref_grammar: Cdgs
    dialogue_grammar: Cdgs
    reply_templates: Mapping[str, tuple[str, ...]]
    grammar_hash: str
    model_hash: str
