from __future__ import annotations

import pytest

from grice.grammar import (
    DerivationMode,
    DuplicateComponentId,
    EmptyComponent,
    ErasingRuleRejected,
    GrammarSyntaxError,
    UndeclaredSymbol,
    parse_grammar_file,
)

CLASSIC_TEXT = """\
# the three-component handshake system
nonterminals: S A A' B B'
terminals: a b c
axiom: S
mode: t            # rewrite until stuck
component P1:
  S -> A B
  A' -> A
  B' -> B
component P2:
  A -> a A' b
  B -> c B'
component P3:
  A -> a b
  B -> c
"""


def test_classic_file_parses():
    g = parse_grammar_file(CLASSIC_TEXT)
    assert [c.id for c in g.components] == ["P1", "P2", "P3"]
    assert g.axiom.name == "S"
    assert g.default_mode == DerivationMode.terminal()
    assert {s.name for s in g.terminals} == {"a", "b", "c"}
    assert len(g.components[0].productions) == 3


def test_mode_header_optional():
    text = CLASSIC_TEXT.replace("mode: t            # rewrite until stuck\n", "")
    assert parse_grammar_file(text).default_mode is None


def test_erasing_rule_rejected_with_position():
    text = "nonterminals: A\nterminals: x\naxiom: A\ncomponent P:\n  A ->\n"
    with pytest.raises(ErasingRuleRejected) as exc:
        parse_grammar_file(text)
    assert exc.value.line == 5


def test_undeclared_symbol_with_position():
    text = "nonterminals: A\nterminals: x\naxiom: A\ncomponent P:\n  A -> Z\n"
    with pytest.raises(UndeclaredSymbol) as exc:
        parse_grammar_file(text)
    assert exc.value.line == 5
    assert exc.value.column == 8


def test_empty_component():
    text = "nonterminals: A\nterminals: x\naxiom: A\ncomponent P:\ncomponent Q:\n  A -> x\n"
    with pytest.raises(EmptyComponent) as exc:
        parse_grammar_file(text)
    assert exc.value.line == 4


def test_duplicate_component_id():
    text = (
        "nonterminals: A\nterminals: x\naxiom: A\n"
        "component P:\n  A -> x\ncomponent P:\n  A -> x A\n"
    )
    with pytest.raises(DuplicateComponentId) as exc:
        parse_grammar_file(text)
    assert exc.value.line == 6


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("terminals: x\naxiom: A\ncomponent P:\n  A -> x\n", "missing 'nonterminals'"),
        ("nonterminals: A\nterminals: x\ncomponent P:\n  A -> x\n", "missing 'axiom'"),
        ("nonterminals: A\nterminals: x\naxiom: A\n", "no components"),
        ("nonterminals: A\nterminals: x\naxiom: A\nmode: q\ncomponent P:\n  A -> x\n", "invalid mode"),
        ("nonterminals: A\nterminals: x\naxiom: A\n  A -> x\n", "production before any component"),
        ("nonterminals: A A\nterminals: x\naxiom: A\ncomponent P:\n  A -> x\n", "declared twice"),
        ("nonterminals: A\nterminals: x\naxiom: A\ncomponent P:\n  A -> x\nwhat is this\n", "cannot parse"),
    ],
)
def test_syntax_errors(text, fragment):
    with pytest.raises(GrammarSyntaxError) as exc:
        parse_grammar_file(text)
    assert fragment in str(exc.value)


def test_axiom_must_be_nonterminal():
    text = "nonterminals: A\nterminals: x\naxiom: x\ncomponent P:\n  A -> x\n"
    with pytest.raises(UndeclaredSymbol):
        parse_grammar_file(text)


def test_duplicate_production_lines_are_deduped():
    text = "nonterminals: A\nterminals: x\naxiom: A\ncomponent P:\n  A -> x\n  A -> x\n"
    g = parse_grammar_file(text)
    assert len(g.components[0].productions) == 1


def test_comments_and_blank_lines_ignored():
    text = "\n# leading comment\nnonterminals: A # trailing\n\nterminals: x\naxiom: A\ncomponent P:\n  A -> x\n"
    g = parse_grammar_file(text)
    assert {s.name for s in g.nonterminals} == {"A"}
