"""Breach-to-act policy: how the robot recovers from each maxim violation.

The table, applied per breach in input order (s_int = severity_interrupt,
s_follow = severity_resume):

    Quantity/TooSparse      always          AskForMore
    Quantity/TooDetailed    always          Interrupt, speaker -> at most 1
    Quality/Unsupported     always          Challenge
    Quality/Contradiction   always          Clarify
    Relation/OffTopic       sev < s_follow  FollowNewTopic (push new topic)
    Relation/OffTopic       sev >= s_follow ResumePreviousTopic
    Manner/TooLong          sev >= s_int    Interrupt, speaker -> at most 1
    Manner/TooLong          sev < s_int     (nothing)
    Manner/Ambiguous        always          Clarify
"""

from __future__ import annotations

from typing import Sequence

from ..grammar import DerivationMode
from ..monitor import BreachEvent, BreachKind, MonitorConfig
from .state import ActTag, RecoveryAct


def decide_acts(
    breaches: Sequence[BreachEvent],
    cfg: MonitorConfig,
    speaker: str = "human",
) -> list[RecoveryAct]:
    """Map breaches to recovery acts; total over every (kind, severity)."""
    acts: list[RecoveryAct] = []
    constrain = (speaker, DerivationMode.at_most(1))
    for breach in breaches:
        kind = breach.kind
        if kind is BreachKind.TOO_SPARSE:
            acts.append(RecoveryAct(ActTag.ASK_FOR_MORE, breach))
        elif kind is BreachKind.TOO_DETAILED:
            acts.append(RecoveryAct(ActTag.INTERRUPT, breach, constrain))
        elif kind is BreachKind.UNSUPPORTED:
            acts.append(RecoveryAct(ActTag.CHALLENGE, breach))
        elif kind is BreachKind.CONTRADICTION:
            acts.append(RecoveryAct(ActTag.CLARIFY, breach))
        elif kind is BreachKind.OFF_TOPIC:
            if breach.severity < cfg.severity_resume:
                acts.append(RecoveryAct(ActTag.FOLLOW_NEW_TOPIC, breach))
            else:
                acts.append(RecoveryAct(ActTag.RESUME_PREVIOUS_TOPIC, breach))
        elif kind is BreachKind.TOO_LONG:
            if breach.severity >= cfg.severity_interrupt:
                acts.append(RecoveryAct(ActTag.INTERRUPT, breach, constrain))
        elif kind is BreachKind.AMBIGUOUS:
            acts.append(RecoveryAct(ActTag.CLARIFY, breach))
        else:  # pragma: no cover - enum is closed
            raise ValueError(f"unhandled breach kind {kind}")
    return acts
