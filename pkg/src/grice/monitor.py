"""Breach detectors for the four conversational maxims.

Each detector is a pure function from a turn (plus dialogue context) to an
optional severity-scored breach event. ``run_all`` composes them in the
canonical order: quantity, quality, relation, then manner (length before
ambiguity). Checking never mutates the belief store or the topic model;
the only "output state" is the returned updated context distribution.

Thresholds are config-driven; the defaults are documented choices that make
the shipped fixtures discriminative, not empirical claims.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from .grammar import Cdgs, count_parse_trees
from .topics import EmptyAfterFiltering, TopicModel, infer, similarity, tokenize


class ConfigInvalid(Exception):
    """A monitor/server configuration violates its documented bounds."""


class ContradictionRejected(Exception):
    """Insertion of a belief contradicting the store was refused."""


class Maxim(Enum):
    QUANTITY = "Quantity"
    QUALITY = "Quality"
    RELATION = "Relation"
    MANNER = "Manner"


class BreachKind(Enum):
    TOO_SPARSE = "TooSparse"
    TOO_DETAILED = "TooDetailed"
    UNSUPPORTED = "Unsupported"
    CONTRADICTION = "Contradiction"
    OFF_TOPIC = "OffTopic"
    TOO_LONG = "TooLong"
    AMBIGUOUS = "Ambiguous"


# the only legal maxim/kind pairings
MAXIM_OF_KIND = {
    BreachKind.TOO_SPARSE: Maxim.QUANTITY,
    BreachKind.TOO_DETAILED: Maxim.QUANTITY,
    BreachKind.UNSUPPORTED: Maxim.QUALITY,
    BreachKind.CONTRADICTION: Maxim.QUALITY,
    BreachKind.OFF_TOPIC: Maxim.RELATION,
    BreachKind.TOO_LONG: Maxim.MANNER,
    BreachKind.AMBIGUOUS: Maxim.MANNER,
}


@dataclass(frozen=True)
class BreachEvent:
    maxim: Maxim
    kind: BreachKind
    severity: float
    turn_index: int
    evidence: str
    payload: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if MAXIM_OF_KIND[self.kind] is not self.maxim:
            raise ValueError(f"kind {self.kind.value} does not belong to maxim {self.maxim.value}")
        if not (0.0 <= self.severity <= 1.0):
            raise ValueError(f"severity {self.severity} outside [0, 1]")

    def to_dict(self) -> dict[str, Any]:
        return {
            "maxim": self.maxim.value,
            "kind": self.kind.value,
            "severity": self.severity,
            "turnIndex": self.turn_index,
            "evidence": self.evidence,
            "payload": dict(self.payload),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "BreachEvent":
        return cls(
            maxim=Maxim(data["maxim"]),
            kind=BreachKind(data["kind"]),
            severity=data["severity"],
            turn_index=data["turnIndex"],
            evidence=data["evidence"],
            payload=dict(data.get("payload", {})),
        )


class Polarity(Enum):
    AFFIRMED = "affirmed"
    DENIED = "denied"

    def flipped(self) -> "Polarity":
        return Polarity.DENIED if self is Polarity.AFFIRMED else Polarity.AFFIRMED


@dataclass(frozen=True)
class Assertion:
    """A polarized subject-predicate-object claim carried by an utterance."""

    subject: str
    predicate: str
    object: str
    polarity: Polarity = Polarity.AFFIRMED
    hedged: bool = False

    def __post_init__(self) -> None:
        for name in ("subject", "predicate", "object"):
            if not getattr(self, name):
                raise ValueError(f"assertion {name} must be non-empty")

    @property
    def triple(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate, self.object)

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "predicate": self.predicate,
            "object": self.object,
            "polarity": self.polarity.value,
            "hedged": self.hedged,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Assertion":
        return cls(
            subject=data["subject"],
            predicate=data["predicate"],
            object=data["object"],
            polarity=Polarity(data.get("polarity", "affirmed")),
            hedged=bool(data.get("hedged", False)),
        )


@dataclass(frozen=True)
class BeliefStore:
    """Polarized triples the robot takes as established.

    The store never holds a triple in both polarities: adding the opposite
    of an existing belief raises ContradictionRejected instead of merging.
    """

    triples: frozenset[tuple[str, str, str, Polarity]] = frozenset()

    @classmethod
    def empty(cls) -> "BeliefStore":
        return cls(frozenset())

    def polarity_of(self, subject: str, predicate: str, object: str) -> Optional[Polarity]:
        for s, p, o, pol in self.triples:
            if (s, p, o) == (subject, predicate, object):
                return pol
        return None

    def holds(self, assertion: Assertion) -> bool:
        return (assertion.subject, assertion.predicate, assertion.object, assertion.polarity) in self.triples

    def add(self, subject: str, predicate: str, object: str, polarity: Polarity) -> "BeliefStore":
        existing = self.polarity_of(subject, predicate, object)
        if existing is not None and existing is not polarity:
            raise ContradictionRejected(
                f"({subject}, {predicate}, {object}) already held as {existing.value}"
            )
        return BeliefStore(self.triples | {(subject, predicate, object, polarity)})

    def commit(self, assertions: Sequence[Assertion]) -> "BeliefStore":
        store = self
        for a in assertions:
            store = store.add(a.subject, a.predicate, a.object, a.polarity)
        return store


@dataclass(frozen=True)
class MonitorConfig:
    brevity_max_tokens: int = 30
    quantity_min_content: int = 3
    quantity_max_content: int = 60
    relevance_min: float = 0.5
    context_decay: float = 0.7
    severity_interrupt: float = 0.5
    severity_resume: float = 0.5
    ambiguity_cap: int = 8
    monitor_robot: bool = True

    def __post_init__(self) -> None:
        if self.brevity_max_tokens < 1:
            raise ConfigInvalid(f"brevity_max_tokens must be >= 1, got {self.brevity_max_tokens}")
        if self.quantity_min_content < 1:
            raise ConfigInvalid(f"quantity_min_content must be >= 1, got {self.quantity_min_content}")
        if not self.quantity_min_content < self.quantity_max_content:
            raise ConfigInvalid(
                f"quantity_min_content ({self.quantity_min_content}) must be < "
                f"quantity_max_content ({self.quantity_max_content})"
            )
        if not 0.0 < self.relevance_min < 1.0:
            raise ConfigInvalid(f"relevance_min must lie in (0, 1), got {self.relevance_min}")
        if not 0.0 < self.context_decay < 1.0:
            raise ConfigInvalid(f"context_decay must lie in (0, 1), got {self.context_decay}")
        if not 0.0 < self.severity_interrupt <= 1.0:
            raise ConfigInvalid(f"severity_interrupt must lie in (0, 1], got {self.severity_interrupt}")
        if not 0.0 < self.severity_resume <= 1.0:
            raise ConfigInvalid(f"severity_resume must lie in (0, 1], got {self.severity_resume}")
        if self.ambiguity_cap < 2:
            raise ConfigInvalid(f"ambiguity_cap must be >= 2, got {self.ambiguity_cap}")

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MonitorConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigInvalid(f"unknown monitor config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigInvalid(str(exc)) from None

    def with_overrides(self, overrides: Mapping[str, Any]) -> "MonitorConfig":
        merged = self.to_dict()
        unknown = set(overrides) - set(merged)
        if unknown:
            raise ConfigInvalid(f"unknown monitor config keys: {sorted(unknown)}")
        merged.update(overrides)
        return MonitorConfig(**merged)


def check_brevity(tokens: Sequence[str], cfg: MonitorConfig, turn_index: int = 0) -> Optional[BreachEvent]:
    """Manner/TooLong when the raw token count exceeds the limit."""
    count = len(tokens)
    limit = cfg.brevity_max_tokens
    if count == 0 or count <= limit:
        return None
    severity = min(1.0, (count - limit) / limit)
    return BreachEvent(
        Maxim.MANNER, BreachKind.TOO_LONG, severity, turn_index,
        f"{count} tokens exceed the {limit}-token limit",
        {"count": count, "limit": limit},
    )


def check_quantity(content_token_count: int, cfg: MonitorConfig, turn_index: int = 0) -> Optional[BreachEvent]:
    """Quantity/TooSparse below the band, Quantity/TooDetailed above it."""
    if content_token_count < 0:
        raise ValueError("content token count must be >= 0")
    q_min, q_max = cfg.quantity_min_content, cfg.quantity_max_content
    if content_token_count < q_min:
        severity = (q_min - content_token_count) / q_min
        return BreachEvent(
            Maxim.QUANTITY, BreachKind.TOO_SPARSE, severity, turn_index,
            f"{content_token_count} content tokens, below the minimum {q_min}",
            {"count": content_token_count, "min": q_min},
        )
    if content_token_count > q_max:
        severity = min(1.0, (content_token_count - q_max) / q_max)
        return BreachEvent(
            Maxim.QUANTITY, BreachKind.TOO_DETAILED, severity, turn_index,
            f"{content_token_count} content tokens, above the maximum {q_max}",
            {"count": content_token_count, "max": q_max},
        )
    return None


def check_relevance(
    turn_theta: Sequence[float],
    context_theta: Optional[Sequence[float]],
    cfg: MonitorConfig,
    turn_index: int = 0,
) -> tuple[Optional[BreachEvent], tuple[float, ...]]:
    """Relation/OffTopic when the turn drifts from the decayed topic context.

    Returns (event or None, updated context). A first turn initializes the
    context to the turn's own distribution and never breaches.
    """
    turn = tuple(float(x) for x in turn_theta)
    if context_theta is None:
        return None, turn
    score = similarity(turn, context_theta)
    event = None
    if score < cfg.relevance_min:
        severity = (cfg.relevance_min - score) / cfg.relevance_min
        event = BreachEvent(
            Maxim.RELATION, BreachKind.OFF_TOPIC, severity, turn_index,
            f"topic similarity {score:.3f} below threshold {cfg.relevance_min}",
            {"score": score, "threshold": cfg.relevance_min},
        )
    decay = cfg.context_decay
    mixed = decay * np.asarray(context_theta, dtype=np.float64) + (1.0 - decay) * np.asarray(turn)
    mixed = mixed / mixed.sum()
    return event, tuple(float(x) for x in mixed)


def check_quality(
    assertions: Sequence[Assertion],
    beliefs: BeliefStore,
    turn_index: int = 0,
) -> list[BreachEvent]:
    """Quality breaches per assertion; the store itself is never modified.

    Contradictions of held beliefs score 1.0 regardless of hedging;
    unhedged claims absent from the store score 0.5 as unsupported.
    """
    events = []
    for a in assertions:
        held = beliefs.polarity_of(a.subject, a.predicate, a.object)
        if held is not None and held is not a.polarity:
            events.append(BreachEvent(
                Maxim.QUALITY, BreachKind.CONTRADICTION, 1.0, turn_index,
                f"({a.subject}, {a.predicate}, {a.object}) asserted {a.polarity.value} "
                f"but held {held.value}",
                {"assertion": a.to_dict(), "held": held.value},
            ))
        elif held is None and not a.hedged:
            events.append(BreachEvent(
                Maxim.QUALITY, BreachKind.UNSUPPORTED, 0.5, turn_index,
                f"({a.subject}, {a.predicate}, {a.object}) lacks supporting belief",
                {"assertion": a.to_dict()},
            ))
    return events


def check_ambiguity(
    tokens: Sequence[str],
    ref_grammar: Cdgs,
    cfg: MonitorConfig,
    turn_index: int = 0,
) -> Optional[BreachEvent]:
    """Manner/Ambiguous when the reference grammar parses the turn at least
    two ways; unparsable input (including out-of-alphabet tokens) is not a
    breach."""
    if not tokens:
        return None
    count = count_parse_trees(ref_grammar, list(tokens), cap=cfg.ambiguity_cap)
    if count < 2:
        return None
    severity = min(1.0, (count - 1) / (cfg.ambiguity_cap - 1))
    return BreachEvent(
        Maxim.MANNER, BreachKind.AMBIGUOUS, severity, turn_index,
        f"{count} distinct parse trees (cap {cfg.ambiguity_cap})",
        {"parseTrees": count, "cap": cfg.ambiguity_cap},
    )


@dataclass(frozen=True)
class MonitorModels:
    """Trained artifacts the detectors consult (read-only)."""

    topic_model: Optional[TopicModel] = None
    ref_grammar: Optional[Cdgs] = None
    infer_sweeps: int = 64


def run_all(
    *,
    tokens: Sequence[str],
    text: str,
    assertions: Sequence[Assertion],
    beliefs: BeliefStore,
    context_theta: Optional[tuple[float, ...]],
    models: MonitorModels,
    cfg: MonitorConfig,
    turn_index: int,
    seed: int,
) -> tuple[tuple[BreachEvent, ...], Optional[tuple[float, ...]], Optional[tuple[float, ...]]]:
    """Run the four detectors in maxim order on one turn.

    Returns (breaches, turn_theta, new_context_theta). ``turn_theta`` is
    None when the turn has no in-vocabulary content (the relation check is
    then skipped and the context is left unchanged).
    """
    content = tokenize(text)
    events: list[BreachEvent] = []

    quantity = check_quantity(len(content), cfg, turn_index)
    if quantity:
        events.append(quantity)

    events.extend(check_quality(assertions, beliefs, turn_index))

    turn_theta: Optional[tuple[float, ...]] = None
    new_context = context_theta
    if models.topic_model is not None:
        ids = models.topic_model.vocabulary.encode(content)
        if ids:
            theta = infer(models.topic_model, ids, sweeps=models.infer_sweeps, seed=seed)
            turn_theta = tuple(float(x) for x in theta)
            relevance, new_context = check_relevance(turn_theta, context_theta, cfg, turn_index)
            if relevance:
                events.append(relevance)

    brevity = check_brevity(tokens, cfg, turn_index)
    if brevity:
        events.append(brevity)

    if models.ref_grammar is not None:
        ambiguity = check_ambiguity(tokens, models.ref_grammar, cfg, turn_index)
        if ambiguity:
            events.append(ambiguity)

    return tuple(events), turn_theta, new_context


_HEDGES = ("i think", "i believe", "i guess", "maybe", "perhaps", "possibly", "probably")
_COPULAS = {"is", "are"}


def extract_assertions(text: str) -> list[Assertion]:
    """Trivial "X is Y" / "X is not Y" extraction for free text.

    Scripted transcripts and the UI pass structured assertions explicitly;
    this fallback only catches single-copula sentences and marks hedged
    ones ("I think ...") accordingly.
    """
    out = []
    for sentence in _split_sentences(text):
        lowered = sentence.lower().strip()
        hedged = any(h in lowered for h in _HEDGES)
        for hedge in _HEDGES:
            if lowered.startswith(hedge):
                lowered = lowered[len(hedge):].lstrip(" ,:")
                break
        tokens = [t for t in lowered.replace(",", " ").split() if t]
        copula_at = next((i for i, t in enumerate(tokens) if t in _COPULAS), None)
        if copula_at is None or copula_at == 0:
            continue
        subject = tokens[copula_at - 1]
        rest = tokens[copula_at + 1:]
        polarity = Polarity.AFFIRMED
        if rest and rest[0] == "not":
            polarity = Polarity.DENIED
            rest = rest[1:]
        if not rest:
            continue
        out.append(Assertion(
            subject=subject,
            predicate=tokens[copula_at],
            object=" ".join(rest).rstrip(".!?"),
            polarity=polarity,
            hedged=hedged,
        ))
    return out


def _split_sentences(text: str) -> list[str]:
    parts = []
    buf = []
    for ch in text:
        if ch in ".!?;":
            if buf:
                parts.append("".join(buf))
                buf = []
        else:
            buf.append(ch)
    if buf:
        parts.append("".join(buf))
    return [p.strip() for p in parts if p.strip()]
