"""Rewriting under derivation modes: single steps, work blocks, bounded
language enumeration, and membership with witness traces.

Rewriting is free (any occurrence may be rewritten). Because erasing rules
are rejected at construction time, every step is length-nondecreasing, so
pruning forms longer than ``max_len`` loses nothing below that bound and
bounded enumeration is complete up to it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .model import (
    Cdgs,
    Component,
    DerivationMode,
    DerivationTrace,
    GrammarError,
    ModeKind,
    NonTerminalInput,
    Production,
    SententialForm,
    Symbol,
    TraceBlock,
    TraceStep,
    apply_production,
    is_terminal_form,
)

ModeAssignment = Union[DerivationMode, Mapping[str, DerivationMode]]


def step(component: Component, form: SententialForm) -> set[tuple[SententialForm, Production, int]]:
    """All single-step rewrites of ``form`` by this component.

    Returns every (successor, production, position) triple; empty iff no
    production of the component applies anywhere in the form.
    """
    out = set()
    for position, symbol in enumerate(form):
        if not symbol.is_nonterminal:
            continue
        for production in component.productions:
            if production.lhs == symbol:
                out.add((apply_production(form, production, position), production, position))
    return out


@dataclass(frozen=True)
class DeriveResult:
    """Forms reachable in one work block, plus a truncation flag.

    ``truncated`` is set when the step or length bound cut the search, i.e.
    further results may exist beyond the bounds; it is never an error.
    """

    forms: frozenset[SententialForm]
    truncated: bool


def derive_in_mode(
    component: Component,
    form: SententialForm,
    mode: DerivationMode,
    *,
    max_steps: int,
    max_len: int,
) -> DeriveResult:
    """All forms one work block of ``component`` can leave behind.

    The step count s of the block satisfies: exactly k: s=k; at_most k:
    1<=s<=k; at_least k: s>=k; star: s>=1; terminal: rewrite until no rule
    of the component applies (s=0 when the input form already has none).
    """
    if max_steps < 1 or max_len < 1:
        raise GrammarError("bounds must be positive")
    reached, truncated = _block_successors(component, form, mode, max_steps, max_len)
    return DeriveResult(frozenset(reached), truncated)


def _block_successors(
    component: Component,
    form: SententialForm,
    mode: DerivationMode,
    max_steps: int,
    max_len: int,
) -> tuple[dict[SententialForm, tuple[int, tuple[TraceStep, ...]]], bool]:
    """Level-by-level block expansion.

    Returns ``{result_form: (step_count, steps)}`` keeping, per result, the
    first (fewest-steps, deterministic) witness path, plus the truncation
    flag. Level i holds every form reachable in exactly i steps.
    """
    truncated = False
    results: dict[SententialForm, tuple[int, tuple[TraceStep, ...]]] = {}

    def keep(f: SententialForm, depth: int, path: tuple[TraceStep, ...]) -> None:
        if f not in results:
            results[f] = (depth, path)

    top = mode.k if mode.kind in (ModeKind.EXACTLY, ModeKind.AT_MOST) else max_steps
    if top > max_steps:
        top = max_steps
        truncated = True  # the mode's own bound lies beyond the step budget

    level: dict[SententialForm, tuple[TraceStep, ...]] = {form: ()}
    depth = 0
    while True:
        if mode.kind is ModeKind.TERMINAL:
            survivors = {}
            for f, path in level.items():
                succ = _ordered_steps(component, f)
                if not succ:
                    keep(f, depth, path)
                else:
                    survivors[f] = (path, succ)
            if depth == top:
                if survivors:
                    truncated = True
                break
            next_level: dict[SententialForm, tuple[TraceStep, ...]] = {}
            for f, (path, succ) in survivors.items():
                for g, prod, pos in succ:
                    if len(g) > max_len:
                        truncated = True
                        continue
                    if g not in next_level:
                        next_level[g] = path + (TraceStep(prod, pos),)
            if not next_level:
                break
            level = next_level
            depth += 1
            continue

        in_range = (
            (mode.kind is ModeKind.STAR and depth >= 1)
            or (mode.kind is ModeKind.EXACTLY and depth == mode.k)
            or (mode.kind is ModeKind.AT_MOST and 1 <= depth <= (mode.k or 0))
            or (mode.kind is ModeKind.AT_LEAST and depth >= (mode.k or 0))
        )
        if in_range:
            for f, path in level.items():
                keep(f, depth, path)
        if depth == top:
            if mode.kind in (ModeKind.STAR, ModeKind.AT_LEAST):
                # more steps could exist past the budget
                if any(_ordered_steps(component, f) for f in level):
                    truncated = True
            break
        next_level = {}
        for f, path in level.items():
            for g, prod, pos in _ordered_steps(component, f):
                if len(g) > max_len:
                    truncated = True
                    continue
                if g not in next_level:
                    next_level[g] = path + (TraceStep(prod, pos),)
        if not next_level:
            break
        level = next_level
        depth += 1

    return results, truncated


def _ordered_steps(
    component: Component, form: SententialForm
) -> list[tuple[SententialForm, Production, int]]:
    # Deterministic expansion order: position, then declaration order.
    out = []
    for position, symbol in enumerate(form):
        if not symbol.is_nonterminal:
            continue
        for production in component.productions:
            if production.lhs == symbol:
                out.append((apply_production(form, production, position), production, position))
    return out


def _mode_for(mode: ModeAssignment, component_id: str) -> DerivationMode:
    if isinstance(mode, DerivationMode):
        return mode
    try:
        return mode[component_id]
    except KeyError:
        raise GrammarError(f"no mode assigned to component {component_id!r}") from None


@dataclass(frozen=True)
class EnumerationResult:
    """Terminal words found within the bounds, as tuples of terminal names."""

    words: frozenset[tuple[str, ...]]
    truncated: bool


def enumerate_language(
    grammar: Cdgs,
    mode: ModeAssignment,
    *,
    max_len: int,
    max_steps: int,
) -> EnumerationResult:
    """Every terminal word of length <= max_len derivable from the axiom by
    any sequence of work blocks totalling <= max_steps rewriting steps.

    Breadth-first over sentential forms with fewest-total-steps memoization;
    zero-step (vacuous) terminal-mode blocks are skipped since they never
    change the form.
    """
    if max_len < 1 or max_steps < 1:
        raise GrammarError("bounds must be positive")
    dist, _, truncated = _search(grammar, mode, max_len=max_len, max_steps=max_steps, target=None)
    words = frozenset(
        tuple(s.name for s in form) for form in dist if is_terminal_form(form)
    )
    return EnumerationResult(words, truncated)


def membership(
    grammar: Cdgs,
    mode: ModeAssignment,
    word: tuple[str, ...] | str,
    *,
    max_steps: int,
    max_len: int | None = None,
) -> DerivationTrace | None:
    """Witness trace deriving ``word`` within the bounds, or None.

    ``word`` may be a tuple of terminal names or a string (tokenized by
    :meth:`Cdgs.form_from_text`). Raises NonTerminalInput if it mentions a
    nonterminal or an undeclared symbol.
    """
    target = _word_to_form(grammar, word)
    limit = len(target) if max_len is None else max_len
    if limit < len(target):
        return None
    _, parents, _ = _search(grammar, mode, max_len=limit, max_steps=max_steps, target=target)
    if target not in parents and target != grammar.axiom_form:
        return None
    blocks: list[TraceBlock] = []
    form = target
    while form != grammar.axiom_form:
        parent, block = parents[form]
        blocks.append(block)
        form = parent
    return DerivationTrace(tuple(reversed(blocks)))


def _word_to_form(grammar: Cdgs, word: tuple[str, ...] | str) -> SententialForm:
    terminals_by_name = {s.name: s for s in grammar.terminals}
    nonterminal_names = {s.name for s in grammar.nonterminals}
    if isinstance(word, str):
        form = grammar.form_from_text(word)
        names = [s.name for s in form]
    else:
        names = list(word)
    out = []
    for name in names:
        if name in nonterminal_names:
            raise NonTerminalInput(f"word contains nonterminal {name!r}")
        if name not in terminals_by_name:
            raise NonTerminalInput(f"word contains undeclared symbol {name!r}")
        out.append(terminals_by_name[name])
    return tuple(out)


def _search(
    grammar: Cdgs,
    mode: ModeAssignment,
    *,
    max_len: int,
    max_steps: int,
    target: SententialForm | None,
):
    """Dijkstra over forms; block transitions come from _block_successors.

    Returns (dist, parents, truncated) where parents maps each discovered
    form to (predecessor form, TraceBlock). Stops early once ``target`` is
    settled.
    """
    start = grammar.axiom_form
    dist: dict[SententialForm, int] = {start: 0}
    parents: dict[SententialForm, tuple[SententialForm, TraceBlock]] = {}
    truncated = False
    counter = 0
    heap: list[tuple[int, int, SententialForm]] = [(0, counter, start)]
    while heap:
        steps_used, _, form = heapq.heappop(heap)
        if steps_used > dist.get(form, -1):
            continue
        if target is not None and form == target:
            break
        budget = max_steps - steps_used
        if budget <= 0:
            if any(step(c, form) for c in grammar.components):
                truncated = True
            continue
        for component in grammar.components:
            comp_mode = _mode_for(mode, component.id)
            reached, trunc = _block_successors(component, form, comp_mode, budget, max_len)
            truncated = truncated or trunc
            for successor, (block_steps, path) in reached.items():
                if block_steps == 0:
                    continue  # vacuous terminal-mode block; never changes the form
                total = steps_used + block_steps
                if successor not in dist or total < dist[successor]:
                    dist[successor] = total
                    parents[successor] = (
                        form,
                        TraceBlock(component.id, comp_mode, path, successor),
                    )
                    counter += 1
                    heapq.heappush(heap, (total, counter, successor))
    return dist, parents, truncated
