"""Core data model for cooperating distributed grammar systems (CDGS).

A CDGS is a context-free grammar whose productions are split across several
components. The components take turns rewriting a single shared sentential
form (the blackboard); a derivation mode decides how long each component may
keep rewriting before handing the string back.

All types here are immutable values: construction validates the invariants
and every operation elsewhere in the package treats them as read-only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional

SYMBOL_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")


class GrammarError(Exception):
    """Base class for grammar construction and parsing failures.

    ``line`` and ``column`` are 1-based positions into the grammar file when
    the error was raised by the parser, and ``None`` for programmatic
    construction errors.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", col {column}" if column is not None else "") + f": {message}"
        super().__init__(message)


class GrammarSyntaxError(GrammarError):
    """Malformed grammar file: bad header, bad symbol name, stray text."""


class UndeclaredSymbol(GrammarError):
    """A production or axiom references a symbol that was never declared."""


class ErasingRuleRejected(GrammarError):
    """A production with an empty right-hand side was rejected.

    Erasing rules are banned so that every rewriting step is
    length-nondecreasing; bounded enumeration then terminates and is
    complete up to the length bound.
    """


class EmptyComponent(GrammarError):
    """A component declared no productions."""


class DuplicateComponentId(GrammarError):
    """Two components share the same id."""


class NonTerminalInput(GrammarError):
    """A word handed to membership contained a non-terminal symbol."""


class NotEpsilonFree(GrammarError):
    """The grammar contains an erasing rule (defensive; see ErasingRuleRejected)."""


class SymbolKind(Enum):
    NONTERMINAL = "nonterminal"
    TERMINAL = "terminal"


@dataclass(frozen=True, order=True)
class Symbol:
    """A grammar symbol. Nonterminal and terminal alphabets are disjoint."""

    name: str
    kind: SymbolKind

    def __post_init__(self) -> None:
        if not SYMBOL_NAME_RE.match(self.name):
            raise GrammarSyntaxError(f"invalid symbol name {self.name!r}")

    @property
    def is_nonterminal(self) -> bool:
        return self.kind is SymbolKind.NONTERMINAL

    def __str__(self) -> str:
        return self.name


def nonterminal(name: str) -> Symbol:
    return Symbol(name, SymbolKind.NONTERMINAL)


def terminal(name: str) -> Symbol:
    return Symbol(name, SymbolKind.TERMINAL)


# The blackboard string: a sequence of symbols.
SententialForm = tuple[Symbol, ...]


def form_text(form: SententialForm, sep: str = "") -> str:
    """Render a sentential form.

    Single-letter names (with optional prime marks, as in ``A'``) read
    concatenated, matching the usual grammar notation; anything longer is
    space-separated.
    """
    def compact(name: str) -> bool:
        return len(name) == 1 or set(name[1:]) == {"'"}

    if sep == "" and any(not compact(s.name) for s in form):
        sep = " "
    return sep.join(s.name for s in form)


def is_terminal_form(form: SententialForm) -> bool:
    return all(not s.is_nonterminal for s in form)


@dataclass(frozen=True, order=True)
class Production:
    """A context-free production ``lhs -> rhs`` with a non-empty rhs."""

    lhs: Symbol
    rhs: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if not self.lhs.is_nonterminal:
            raise GrammarError(f"production lhs must be a nonterminal, got {self.lhs.name!r}")
        if len(self.rhs) == 0:
            raise ErasingRuleRejected(f"empty right-hand side for {self.lhs.name!r}")

    def __str__(self) -> str:
        return f"{self.lhs.name} -> {' '.join(s.name for s in self.rhs)}"


@dataclass(frozen=True)
class Component:
    """One rewriting agent: an id plus its production set (order preserved)."""

    id: str
    productions: tuple[Production, ...]

    def __post_init__(self) -> None:
        if not self.productions:
            raise EmptyComponent(f"component {self.id!r} has no productions")
        if len(set(self.productions)) != len(self.productions):
            # Duplicates are harmless semantically; normalize instead of failing.
            seen: list[Production] = []
            for p in self.productions:
                if p not in seen:
                    seen.append(p)
            object.__setattr__(self, "productions", tuple(seen))


class ModeKind(Enum):
    STAR = "star"
    TERMINAL = "terminal"
    EXACTLY = "exactly"
    AT_MOST = "at_most"
    AT_LEAST = "at_least"


@dataclass(frozen=True)
class DerivationMode:
    """How long a component holds the blackboard within one work block.

    star       any positive number of steps
    terminal   rewrite until none of the component's rules applies
    exactly k  precisely k steps (blocks that cannot finish contribute nothing)
    at_most k  between 1 and k steps
    at_least k k or more steps
    """

    kind: ModeKind
    k: int | None = None

    def __post_init__(self) -> None:
        needs_k = self.kind in (ModeKind.EXACTLY, ModeKind.AT_MOST, ModeKind.AT_LEAST)
        if needs_k:
            if self.k is None or self.k < 1:
                raise GrammarError(f"mode {self.kind.value} requires k >= 1, got {self.k}")
        elif self.k is not None:
            raise GrammarError(f"mode {self.kind.value} takes no k")

    @staticmethod
    def star() -> "DerivationMode":
        return DerivationMode(ModeKind.STAR)

    @staticmethod
    def terminal() -> "DerivationMode":
        return DerivationMode(ModeKind.TERMINAL)

    @staticmethod
    def exactly(k: int) -> "DerivationMode":
        return DerivationMode(ModeKind.EXACTLY, k)

    @staticmethod
    def at_most(k: int) -> "DerivationMode":
        return DerivationMode(ModeKind.AT_MOST, k)

    @staticmethod
    def at_least(k: int) -> "DerivationMode":
        return DerivationMode(ModeKind.AT_LEAST, k)

    @staticmethod
    def parse(text: str) -> "DerivationMode":
        """Parse ``*``, ``t``, ``=k``, ``<=k`` / ``≤k``, ``>=k`` / ``≥k``."""
        text = text.strip()
        if text == "*":
            return DerivationMode.star()
        if text == "t":
            return DerivationMode.terminal()
        for prefix, ctor in (("<=", DerivationMode.at_most), ("≤", DerivationMode.at_most),
                             (">=", DerivationMode.at_least), ("≥", DerivationMode.at_least),
                             ("=", DerivationMode.exactly)):
            if text.startswith(prefix):
                try:
                    k = int(text[len(prefix):])
                except ValueError:
                    raise GrammarError(f"invalid derivation mode {text!r}") from None
                return ctor(k)
        raise GrammarError(f"invalid derivation mode {text!r}")

    def __str__(self) -> str:
        return {
            ModeKind.STAR: "*",
            ModeKind.TERMINAL: "t",
            ModeKind.EXACTLY: f"={self.k}",
            ModeKind.AT_MOST: f"<={self.k}",
            ModeKind.AT_LEAST: f">={self.k}",
        }[self.kind]


@dataclass(frozen=True)
class Cdgs:
    """A validated cooperating distributed grammar system.

    ``default_mode`` echoes the optional ``mode:`` header of a grammar file;
    callers that pass an explicit mode everywhere may ignore it.
    """

    nonterminals: frozenset[Symbol]
    terminals: frozenset[Symbol]
    axiom: Symbol
    components: tuple[Component, ...]
    default_mode: DerivationMode | None = None

    def __post_init__(self) -> None:
        nt_names = {s.name for s in self.nonterminals}
        t_names = {s.name for s in self.terminals}
        overlap = nt_names & t_names
        if overlap:
            raise GrammarSyntaxError(f"symbols declared both nonterminal and terminal: {sorted(overlap)}")
        if not self.components:
            raise GrammarSyntaxError("a CDGS needs at least one component")
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise DuplicateComponentId(f"component id {dup!r} declared twice")
        if self.axiom not in self.nonterminals:
            raise UndeclaredSymbol(f"axiom {self.axiom.name!r} is not a declared nonterminal")
        declared = self.nonterminals | self.terminals
        for comp in self.components:
            for prod in comp.productions:
                for sym in (prod.lhs, *prod.rhs):
                    if sym not in declared:
                        raise UndeclaredSymbol(f"symbol {sym.name!r} used in {prod} is not declared")

    @property
    def axiom_form(self) -> SententialForm:
        return (self.axiom,)

    def component(self, component_id: str) -> Component:
        for comp in self.components:
            if comp.id == component_id:
                return comp
        raise KeyError(component_id)

    def symbol(self, name: str) -> Symbol:
        """Look up a declared symbol by name."""
        for sym in self.nonterminals | self.terminals:
            if sym.name == name:
                return sym
        raise KeyError(name)

    def form_from_text(self, text: str) -> SententialForm:
        """Tokenize a form written as symbol names.

        Whitespace-separated names are taken verbatim; a string without
        whitespace is split by greedy longest match against the declared
        alphabet, so ``aA'b`` reads as ``a A' b`` for single-letter grammars.
        """
        names = sorted((s.name for s in self.nonterminals | self.terminals), key=len, reverse=True)
        by_name = {s.name: s for s in self.nonterminals | self.terminals}
        parts = text.split()
        if len(parts) > 1 or (parts and parts[0] in by_name):
            out = []
            for p in parts:
                if p not in by_name:
                    raise UndeclaredSymbol(f"unknown symbol {p!r}")
                out.append(by_name[p])
            return tuple(out)
        out = []
        rest = text.strip()
        while rest:
            for name in names:
                if rest.startswith(name):
                    out.append(by_name[name])
                    rest = rest[len(name):]
                    break
            else:
                raise UndeclaredSymbol(f"cannot read symbol at {rest!r}")
        return tuple(out)


@dataclass(frozen=True)
class TraceStep:
    """One rewriting step: which production fired at which position."""

    production: Production
    position: int


@dataclass(frozen=True)
class TraceBlock:
    """One component's work block: its steps and the form it left behind."""

    component_id: str
    mode: DerivationMode
    steps: tuple[TraceStep, ...]
    result: SententialForm


@dataclass(frozen=True)
class DerivationTrace:
    """A replayable witness: block list from the axiom to the final form."""

    blocks: tuple[TraceBlock, ...]

    @property
    def final_form(self) -> SententialForm:
        if not self.blocks:
            raise ValueError("empty trace has no final form")
        return self.blocks[-1].result


def apply_production(form: SententialForm, production: Production, position: int) -> SententialForm:
    """Rewrite ``form`` at ``position`` with ``production``; validates the match."""
    if position < 0 or position >= len(form):
        raise GrammarError(f"position {position} outside form of length {len(form)}")
    if form[position] != production.lhs:
        raise GrammarError(
            f"production {production} does not apply at position {position} "
            f"(found {form[position].name!r})"
        )
    return form[:position] + production.rhs + form[position + 1:]


def replay(trace: DerivationTrace, start: SententialForm) -> SententialForm:
    """Replay a trace from ``start``, re-applying every recorded step.

    Raises GrammarError if any recorded step does not apply or a block's
    recorded result disagrees with the recomputed form.
    """
    form = start
    for block in trace.blocks:
        for step_ in block.steps:
            form = apply_production(form, step_.production, step_.position)
        if form != block.result:
            raise GrammarError(
                f"trace corrupt: block for component {block.component_id!r} "
                f"records {form_text(block.result)!r} but replays to {form_text(form)!r}"
            )
    return form
