from __future__ import annotations

import pytest

from conftest import build_grammar
from oracles import CORPUS, oracle_language

from grice.grammar import (
    DerivationMode,
    NonTerminalInput,
    enumerate_language,
    form_text,
    membership,
    replay,
)


@pytest.fixture
def classic():
    return build_grammar(CORPUS["classic"])


def test_witness_for_aabbcc(classic):
    trace = membership(classic, DerivationMode.terminal(), "aabbcc", max_steps=32)
    assert trace is not None
    assert [b.component_id for b in trace.blocks] == ["P1", "P2", "P1", "P3"]
    assert form_text(trace.final_form) == "aabbcc"


def test_non_member_absent(classic):
    assert membership(classic, DerivationMode.terminal(), ("a", "a", "b", "b", "c"), max_steps=32) is None


def test_nonterminal_input_raises(classic):
    with pytest.raises(NonTerminalInput):
        membership(classic, DerivationMode.terminal(), ("a", "A", "b"), max_steps=32)
    with pytest.raises(NonTerminalInput):
        membership(classic, DerivationMode.terminal(), ("a", "zz"), max_steps=32)


def test_replay_reproduces_word(classic):
    for word in ("abc", "aabbcc", "aaabbbccc"):
        trace = membership(classic, DerivationMode.terminal(), word, max_steps=32)
        assert trace is not None
        final = replay(trace, classic.axiom_form)
        assert form_text(final) == word


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize(
    "oracle_mode,engine_mode",
    [("t", DerivationMode.terminal()), ("*", DerivationMode.star()), (("=", 2), DerivationMode.exactly(2))],
)
def test_every_enumerated_word_has_replayable_witness(name, oracle_mode, engine_mode):
    pg = CORPUS[name]
    g = build_grammar(pg)
    for word in sorted(oracle_language(pg, oracle_mode, 6, 20)):
        trace = membership(g, engine_mode, word, max_steps=20)
        assert trace is not None, f"{name}: {''.join(word)} should be derivable"
        assert tuple(s.name for s in replay(trace, g.axiom_form)) == word


def test_membership_agrees_with_enumeration_negatively(classic):
    words = enumerate_language(classic, DerivationMode.terminal(), max_len=6, max_steps=24).words
    for candidate in ("ab", "abcabc", "aabbc", "abcc"):
        in_language = tuple(candidate) in words
        trace = membership(classic, DerivationMode.terminal(), candidate, max_steps=24)
        assert (trace is not None) == in_language


def test_witness_block_modes_recorded(classic):
    trace = membership(classic, DerivationMode.terminal(), "abc", max_steps=32)
    assert all(b.mode == DerivationMode.terminal() for b in trace.blocks)
    assert all(len(b.steps) >= 1 for b in trace.blocks)
