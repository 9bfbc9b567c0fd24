from __future__ import annotations

import pytest

from conftest import build_grammar
from oracles import CLASSIC, REGULAR_APLUS, block_results

from grice.grammar import DerivationMode, GrammarError, derive_in_mode, form_text, step


@pytest.fixture
def classic():
    return build_grammar(CLASSIC)


@pytest.fixture
def aplus():
    return build_grammar(REGULAR_APLUS)


class TestStep:
    def test_single_applicable_rule(self, classic):
        p1 = classic.component("P1")
        results = step(p1, classic.axiom_form)
        assert {form_text(f) for f, _, _ in results} == {"AB"}
        ((form, prod, pos),) = results
        assert str(prod) == "S -> A B"
        assert pos == 0

    def test_one_rule_per_occurrence(self, classic):
        p2 = classic.component("P2")
        form = classic.form_from_text("AB")
        results = step(p2, form)
        assert {form_text(f) for f, _, _ in results} == {"aA'bB", "AcB'"}

    def test_no_nonterminals_empty(self, classic):
        p3 = classic.component("P3")
        assert step(p3, classic.form_from_text("abc")) == set()

    def test_every_position_rewritten(self, aplus):
        comp = aplus.component("P")
        # two rules apply at the single S
        assert len(step(comp, aplus.form_from_text("S"))) == 2


class TestDeriveInMode:
    def test_terminal_mode_runs_to_quiescence(self, classic):
        p2 = classic.component("P2")
        res = derive_in_mode(p2, classic.form_from_text("AB"), DerivationMode.terminal(),
                             max_steps=10, max_len=20)
        assert {form_text(f) for f in res.forms} == {"aA'bcB'"}
        assert not res.truncated

    def test_exactly_two_steps(self, aplus):
        comp = aplus.component("P")
        res = derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.exactly(2),
                             max_steps=10, max_len=20)
        assert {form_text(f) for f in res.forms} == {"aaS", "aa"}

    def test_terminal_mode_vacuous_zero_steps(self, classic):
        p3 = classic.component("P3")
        form = classic.form_from_text("aA'bcB'")
        res = derive_in_mode(p3, form, DerivationMode.terminal(), max_steps=10, max_len=20)
        assert res.forms == frozenset({form})

    def test_star_collects_all_depths(self, aplus):
        comp = aplus.component("P")
        res = derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.star(),
                             max_steps=3, max_len=10)
        assert {form_text(f) for f in res.forms} == {"aS", "a", "aaS", "aa", "aaaS", "aaa"}

    def test_at_least_discards_short_blocks(self, aplus):
        comp = aplus.component("P")
        res = derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.at_least(3),
                             max_steps=4, max_len=10)
        assert {form_text(f) for f in res.forms} == {"aaaS", "aaa", "aaaaS", "aaaa"}

    def test_at_most_includes_one_through_k(self, aplus):
        comp = aplus.component("P")
        res = derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.at_most(2),
                             max_steps=10, max_len=10)
        assert {form_text(f) for f in res.forms} == {"aS", "a", "aaS", "aa"}

    def test_truncation_by_max_len(self, aplus):
        comp = aplus.component("P")
        res = derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.star(),
                             max_steps=50, max_len=3)
        assert res.truncated
        assert {form_text(f) for f in res.forms} == {"aS", "a", "aaS", "aa", "aaa"}

    def test_truncation_by_max_steps(self, aplus):
        comp = aplus.component("P")
        res = derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.star(),
                             max_steps=2, max_len=100)
        assert res.truncated

    def test_exactly_k_beyond_budget_yields_nothing(self, aplus):
        comp = aplus.component("P")
        res = derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.exactly(5),
                             max_steps=3, max_len=100)
        assert res.forms == frozenset()
        assert res.truncated

    def test_bounds_must_be_positive(self, aplus):
        comp = aplus.component("P")
        with pytest.raises(GrammarError):
            derive_in_mode(comp, aplus.form_from_text("S"), DerivationMode.star(),
                           max_steps=0, max_len=5)

    @pytest.mark.parametrize(
        "oracle_mode,engine_mode",
        [
            ("t", DerivationMode.terminal()),
            ("*", DerivationMode.star()),
            (("=", 2), DerivationMode.exactly(2)),
            (("<=", 3), DerivationMode.at_most(3)),
            ((">=", 2), DerivationMode.at_least(2)),
        ],
    )
    def test_block_results_match_oracle(self, classic, oracle_mode, engine_mode):
        p2_plain = CLASSIC.components[1][1]
        for start in ("AB", "aA'bcB'", "AcB'"):
            form = classic.form_from_text(start)
            plain_form = tuple(s.name for s in form)
            want = {f for f, _ in block_results(p2_plain, plain_form, oracle_mode, 8, 12,
                                                CLASSIC.nonterminals)}
            got = derive_in_mode(classic.component("P2"), form, engine_mode,
                                 max_steps=8, max_len=12).forms
            assert {tuple(s.name for s in f) for f in got} == want
