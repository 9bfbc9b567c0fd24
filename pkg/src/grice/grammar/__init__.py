"""Cooperating distributed grammar systems: model, parsing, and rewriting."""

from .ambiguity import count_parse_trees
from .derive import (
    DeriveResult,
    EnumerationResult,
    derive_in_mode,
    enumerate_language,
    membership,
    step,
)
from .model import (
    Cdgs,
    Component,
    DerivationMode,
    DerivationTrace,
    DuplicateComponentId,
    EmptyComponent,
    ErasingRuleRejected,
    GrammarError,
    GrammarSyntaxError,
    ModeKind,
    NonTerminalInput,
    NotEpsilonFree,
    Production,
    SententialForm,
    Symbol,
    SymbolKind,
    TraceBlock,
    TraceStep,
    UndeclaredSymbol,
    apply_production,
    form_text,
    is_terminal_form,
    nonterminal,
    replay,
    terminal,
)
from .parser import parse_grammar_file

__all__ = [
    "Cdgs",
    "Component",
    "DerivationMode",
    "DerivationTrace",
    "DeriveResult",
    "DuplicateComponentId",
    "EmptyComponent",
    "EnumerationResult",
    "ErasingRuleRejected",
    "GrammarError",
    "GrammarSyntaxError",
    "ModeKind",
    "NonTerminalInput",
    "NotEpsilonFree",
    "Production",
    "SententialForm",
    "Symbol",
    "SymbolKind",
    "TraceBlock",
    "TraceStep",
    "UndeclaredSymbol",
    "apply_production",
    "count_parse_trees",
    "derive_in_mode",
    "enumerate_language",
    "form_text",
    "is_terminal_form",
    "membership",
    "nonterminal",
    "parse_grammar_file",
    "replay",
    "step",
    "terminal",
]
