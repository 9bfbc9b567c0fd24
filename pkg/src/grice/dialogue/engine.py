"""The dialogue engine: turn handling, mode switching, and robot replies.

One ``handle_turn`` call processes a human utterance end to end: monitor,
policy, blackboard extension, belief commit, then the templated robot
reply (its own turn, monitored but never mutating context, beliefs, or the
topic stack, so audits with replies suppressed see identical annotations).
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import replace
from importlib import resources as importlib_resources
from typing import Mapping, Optional, Sequence

import numpy as np

from ..grammar import (
    Cdgs,
    DerivationMode,
    ModeKind,
    SententialForm,
    TraceBlock,
    TraceStep,
    apply_production,
    parse_grammar_file,
)
from ..monitor import (
    Assertion,
    ConfigInvalid,
    MonitorConfig,
    MonitorModels,
    extract_assertions,
    run_all,
)
from ..topics import TopicModel, tokenize
from .policy import decide_acts
from .state import (
    ACT_SYMBOL,
    ActTag,
    DialogueClosed,
    DialogueModels,
    DialogueState,
    ModelMissing,
    NotYourTurn,
    Participant,
    RecoveryAct,
    Role,
    Turn,
    UnknownParticipant,
    Utterance,
)

DEFAULT_MODE = DerivationMode.terminal()

_QUESTION_SYMBOLS = frozenset({"askMore", "clarify", "challenge", "ask"})
_BYE_WORDS = frozenset({"bye", "goodbye"})
_SENTENCE_RE = re.compile(r"[^.!?]+[.!?]*")


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def load_resource_text(name: str) -> str:
    return importlib_resources.files("grice.resources").joinpath(name).read_text("utf-8")


def default_dialogue_grammar() -> tuple[Cdgs, str]:
    text = load_resource_text("dialogue_grammar.cdg")
    return parse_grammar_file(text), sha256_text(text)


def load_reply_templates(text: str) -> dict[str, tuple[str, ...]]:
    data = json.loads(text)
    templates = {tag: tuple(entries) for tag, entries in data.items()}
    needed = {t.value for t in ActTag} | {"Ack", "Bye"}
    missing = needed - set(templates)
    if missing:
        raise ModelMissing(f"reply templates missing entries for {sorted(missing)}")
    return templates


def default_models() -> "DialogueModels":
    """Models baked into the package: synthetic topic model, toy reference
    grammar, the built-in dialogue grammar, and the reply templates."""
    from ..topics import TopicModel as _TopicModel

    grammar, grammar_hash = default_dialogue_grammar()
    model_text = load_resource_text("topic_model.json")
    return DialogueModels(
        topic_model=_TopicModel.from_json(model_text),
        ref_grammar=parse_grammar_file(load_resource_text("ref_grammar.cdg")),
        dialogue_grammar=grammar,
        reply_templates=load_reply_templates(load_resource_text("reply_templates.json")),
        grammar_hash=grammar_hash,
        model_hash=sha256_text(model_text),
    )


def turn_seed(dialogue_id: str, speaker: str, speaker_ordinal: int) -> int:
    """Per-turn inference seed derived from the dialogue id.

    Keyed by the speaker's own turn ordinal (not the global index) so that
    an audit replay without robot replies draws the same randomness as a
    live dialogue where replies interleave.
    """
    digest = hashlib.blake2b(
        f"{dialogue_id}:{speaker}:{speaker_ordinal}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


def new_dialogue(
    config: MonitorConfig | Mapping | None,
    models: DialogueModels,
    dialogue_id: str,
) -> DialogueState:
    """Fresh state: blackboard at the axiom, nothing believed, human floor."""
    if config is None:
        config = MonitorConfig()
    elif not isinstance(config, MonitorConfig):
        config = MonitorConfig.from_dict(dict(config))
    if models.topic_model is None:
        raise ModelMissing("topic model not loaded")
    if models.dialogue_grammar is None:
        raise ModelMissing("dialogue grammar not loaded")
    if models.ref_grammar is None:
        raise ModelMissing("reference grammar not loaded")
    if not models.reply_templates:
        raise ModelMissing("reply templates not loaded")
    grammar = models.dialogue_grammar
    participants = []
    for role in (Role.HUMAN, Role.ROBOT):
        try:
            grammar.component(role.value)
        except KeyError:
            raise ModelMissing(f"dialogue grammar has no {role.value!r} component") from None
        participants.append(Participant(role.value, role, role.value, DEFAULT_MODE))
    return DialogueState(
        id=dialogue_id,
        config=config,
        participants=tuple(participants),
        blackboard=grammar.axiom_form,
        floor="human",
    )


def classify_acts(text: str, answer_expected: bool) -> list[str]:
    """Sentence-level dialogue-act labels for a human utterance.

    Question marks map to ``ask``, goodbye words to ``bye``, the first
    sentence after a robot question to ``answer``, everything else to
    ``inform``. Empty input still informs (a turn always appends).
    """
    sentences = [s.strip() for s in _SENTENCE_RE.findall(text) if s.strip()]
    if not sentences:
        return ["inform"]
    acts = []
    for i, sentence in enumerate(sentences):
        first_word = re.sub(r"[^a-z]", "", sentence.split()[0].lower()) if sentence.split() else ""
        if sentence.rstrip().endswith("?"):
            acts.append("ask")
        elif first_word in _BYE_WORDS:
            acts.append("bye")
        elif i == 0 and answer_expected:
            acts.append("answer")
        else:
            acts.append("inform")
    return acts


def append_acts(
    grammar: Cdgs,
    blackboard: SententialForm,
    component_id: str,
    mode: DerivationMode,
    act_symbols: Sequence[str],
) -> tuple[Optional[TraceBlock], tuple[str, ...], SententialForm]:
    """Extend the blackboard with the turn's act symbols.

    The participant's mode caps the block: exactly/at-most k allow at most
    k symbols this turn (the forced-handoff effect of an interrupt); the
    unbounded modes append them all. Closing acts (``bye``) consume the
    open nonterminal, after which nothing can be appended.
    """
    component = grammar.component(component_id)
    ceiling = mode.k if mode.kind in (ModeKind.EXACTLY, ModeKind.AT_MOST) else len(act_symbols)
    steps: list[TraceStep] = []
    appended: list[str] = []
    form = blackboard
    for symbol_name in act_symbols:
        if len(appended) >= ceiling:
            break
        position = next((i for i, s in enumerate(form) if s.is_nonterminal), None)
        if position is None:
            break
        production = next(
            (p for p in component.productions if p.rhs and p.rhs[0].name == symbol_name),
            None,
        )
        if production is None:
            raise UnknownParticipant(
                f"component {component_id!r} has no production for act {symbol_name!r}"
            )
        form = apply_production(form, production, position)
        steps.append(TraceStep(production, position))
        appended.append(symbol_name)
    if not steps:
        return None, (), blackboard
    return TraceBlock(component_id, mode, tuple(steps), form), tuple(appended), form


def topic_word(model: TopicModel, topic_id: int) -> str:
    return model.vocabulary.tokens[int(np.argmax(model.phi[topic_id]))]


def render_reply(
    acts: Sequence[RecoveryAct],
    templates: Mapping[str, tuple[str, ...]],
    *,
    turn_index: int,
    slot: str,
    topic: str,
    closing: bool,
) -> tuple[str, list[str]]:
    """Reply text and act symbols from the policy's decisions.

    Template choice cycles with the turn index, so replies vary but stay a
    pure function of the dialogue so far.
    """
    if closing:
        options = templates["Bye"]
        return options[turn_index % len(options)], ["bye"]
    if not acts:
        options = templates["Ack"]
        text = options[turn_index % len(options)]
        return text.format(slot=slot, topic=topic), ["ack"]
    parts = []
    symbols = []
    for act in acts:
        options = templates[act.tag.value]
        parts.append(options[turn_index % len(options)].format(slot=slot, topic=topic))
        symbols.append(ACT_SYMBOL[act.tag])
    return " ".join(parts), symbols


def apply_mode_switch(state: DialogueState, participant_id: str, mode: DerivationMode) -> DialogueState:
    """Replace a participant's current derivation mode."""
    state.participant(participant_id)  # raises UnknownParticipant
    updated = tuple(
        replace(p, current_mode=mode) if p.id == participant_id else p
        for p in state.participants
    )
    return replace(state, participants=updated)


def handle_turn(
    state: DialogueState,
    utterance: Utterance,
    models: DialogueModels,
    *,
    reply: bool = True,
) -> tuple[Turn, tuple[RecoveryAct, ...], Optional[Utterance], DialogueState]:
    """Process one utterance; optionally generate the robot's reply turn.

    Returns (turn, recovery acts, robot reply or None, new state). With
    ``reply=False`` (audit mode) the robot stays silent and state advances
    by the single turn.
    """
    speaker = state.participant(utterance.speaker)
    if state.floor != speaker.id:
        raise NotYourTurn(f"{speaker.id!r} does not hold the floor")
    if state.closed:
        raise DialogueClosed("the dialogue is closed; no open act position remains")

    turn, new_state = _process_utterance(state, utterance, models, monitored=True)
    acts = turn.acts

    robot_reply: Optional[Utterance] = None
    if reply and speaker.role is Role.HUMAN:
        robot = new_state.participant("robot")
        slot_tokens = tokenize(utterance.text)
        slot = slot_tokens[0] if slot_tokens else "that"
        topic = "that"
        if new_state.topic_stack:
            topic = topic_word(models.topic_model, new_state.topic_stack[-1])
        text, _ = render_reply(
            acts, models.reply_templates,
            turn_index=turn.index, slot=slot, topic=topic, closing=new_state.closed,
        )
        robot_reply = Utterance(
            speaker=robot.id, text=text, assertions=(), timestamp_ms=utterance.timestamp_ms,
        )
        reply_turn, new_state = _process_utterance(
            new_state, robot_reply, models,
            monitored=new_state.config.monitor_robot,
            forced_symbols=_reply_symbols(acts, new_state),
        )
    return turn, acts, robot_reply, new_state


def replay_utterance(
    state: DialogueState,
    utterance: Utterance,
    models: DialogueModels,
) -> tuple[Turn, DialogueState]:
    """Audit-mode processing: monitor and advance state, no floor check and
    no generated reply. Robot records (from replayed traces) stay inert
    exactly as live replies do."""
    speaker = state.participant(utterance.speaker)
    monitored = speaker.role is Role.HUMAN or state.config.monitor_robot
    return _process_utterance(state, utterance, models, monitored=monitored)


def _reply_symbols(acts: Sequence[RecoveryAct], state: DialogueState) -> list[str]:
    if state.closed:
        return []
    if not acts:
        return ["ack"]
    return [ACT_SYMBOL[a.tag] for a in acts]


def _process_utterance(
    state: DialogueState,
    utterance: Utterance,
    models: DialogueModels,
    *,
    monitored: bool,
    forced_symbols: Optional[list[str]] = None,
) -> tuple[Turn, DialogueState]:
    speaker = state.participant(utterance.speaker)
    index = len(state.turns)
    cfg = state.config

    if utterance.assertions is None:
        assertions: tuple[Assertion, ...] = tuple(extract_assertions(utterance.text))
    else:
        assertions = tuple(utterance.assertions)

    breaches: tuple = ()
    turn_theta = None
    new_context = state.context_theta
    if monitored:
        ordinal = sum(1 for t in state.turns if t.utterance.speaker == speaker.id)
        breaches, turn_theta, monitored_context = run_all(
            tokens=utterance.tokens,
            text=utterance.text,
            assertions=assertions,
            beliefs=state.beliefs,
            context_theta=state.context_theta,
            models=MonitorModels(models.topic_model, models.ref_grammar),
            cfg=cfg,
            turn_index=index,
            seed=turn_seed(state.id, speaker.id, ordinal),
        )
        if speaker.role is Role.HUMAN:
            # only human turns move the topic context; the robot's templated
            # replies must not perturb what audits without replies compute
            new_context = monitored_context

    acts: tuple[RecoveryAct, ...] = ()
    stack = state.topic_stack
    beliefs = state.beliefs
    if speaker.role is Role.HUMAN:
        acts = tuple(decide_acts(breaches, cfg, speaker=speaker.id))
        topic_id = int(np.argmax(turn_theta)) if turn_theta is not None else None
        if topic_id is not None and not stack:
            stack = (topic_id,)
        for act in acts:
            if act.tag is ActTag.FOLLOW_NEW_TOPIC and topic_id is not None:
                stack = stack + (topic_id,)
            elif act.tag is ActTag.RESUME_PREVIOUS_TOPIC and len(stack) >= 2:
                stack = stack[:-1]
        if not breaches:
            beliefs = beliefs.commit(assertions)

    if forced_symbols is not None:
        act_symbols = forced_symbols
    else:
        answer_expected = _last_robot_asked(state)
        act_symbols = classify_acts(utterance.text, answer_expected)

    block, appended, blackboard = append_acts(
        models.dialogue_grammar, state.blackboard, speaker.component_id,
        speaker.current_mode, act_symbols,
    )

    participants = state.participants
    if speaker.current_mode != DEFAULT_MODE:
        # a constrained mode lasts exactly one turn, then the default returns
        participants = tuple(
            replace(p, current_mode=DEFAULT_MODE) if p.id == speaker.id else p
            for p in participants
        )
    for act in acts:
        if act.mode_switch is not None:
            target, mode = act.mode_switch
            participants = tuple(
                replace(p, current_mode=mode) if p.id == target else p
                for p in participants
            )

    modes_after = tuple(sorted((p.id, str(p.current_mode)) for p in participants))
    turn = Turn(
        index=index,
        utterance=replace(utterance, assertions=assertions),
        breaches=breaches,
        acts=acts,
        act_symbols=appended,
        block=block,
        blackboard_after=blackboard,
        modes_after=modes_after,
        context_after=new_context,
        stack_after=stack,
    )
    new_state = replace(
        state,
        turns=state.turns + (turn,),
        blackboard=blackboard,
        context_theta=new_context,
        topic_stack=stack,
        beliefs=beliefs,
        participants=participants,
        floor="human",
    )
    return turn, new_state


def _last_robot_asked(state: DialogueState) -> bool:
    for turn in reversed(state.turns):
        if state.participant(turn.utterance.speaker).role is Role.ROBOT:
            return bool(set(turn.act_symbols) & _QUESTION_SYMBOLS)
        return False
    return False
