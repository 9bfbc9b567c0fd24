from __future__ import annotations

import pytest

from conftest import build_grammar
from oracles import CORPUS, cf_generated, enumerate_parse_trees, plain

from grice.grammar import GrammarError, NotEpsilonFree, count_parse_trees


@pytest.fixture
def catalan():
    return build_grammar(CORPUS["catalan"])


def test_catalan_counts(catalan):
    # S -> S S | a over words a^n: Catalan numbers 1, 1, 2, 5, 14
    assert count_parse_trees(catalan, ["a"], cap=100) == 1
    assert count_parse_trees(catalan, ["a", "a"], cap=100) == 1
    assert count_parse_trees(catalan, ["a", "a", "a"], cap=100) == 2
    assert count_parse_trees(catalan, ["a"] * 4, cap=100) == 5
    assert count_parse_trees(catalan, ["a"] * 5, cap=100) == 14


def test_saturation_at_cap(catalan):
    assert count_parse_trees(catalan, ["a"] * 4, cap=3) == 3


def test_unparsable_word_counts_zero(catalan):
    assert count_parse_trees(catalan, ["a", "zzz"], cap=10) == 0
    assert count_parse_trees(catalan, [], cap=10) == 0


def test_cap_must_be_at_least_two(catalan):
    with pytest.raises(GrammarError):
        count_parse_trees(catalan, ["a"], cap=1)


def test_multi_component_grammar_rejected():
    g = build_grammar(CORPUS["classic"])
    with pytest.raises(GrammarError):
        count_parse_trees(g, ["a", "b", "c"], cap=10)


@pytest.mark.parametrize("name", ["catalan", "balanced", "unit_chain", "regular_aplus"])
def test_counts_match_exhaustive_tree_enumeration(name):
    pg = CORPUS[name]
    assert len(pg.components) == 1
    prods = pg.components[0][1]
    g = build_grammar(pg)
    words = sorted(cf_generated(prods, pg.axiom, pg.nonterminals, 6))
    assert words, "corpus grammar should generate something"
    for word in words:
        want = len(enumerate_parse_trees(prods, pg.nonterminals, pg.axiom, word))
        got = count_parse_trees(g, list(word), cap=10_000)
        assert got == want, f"{name}: {''.join(word)}"
    # and words outside the language count zero
    for word in words:
        bogus = word + (word[-1],)
        if bogus not in words:
            want = len(enumerate_parse_trees(prods, pg.nonterminals, pg.axiom, bogus))
            assert count_parse_trees(g, list(bogus), cap=10_000) == want


def test_unit_cycle_saturates():
    # A =>+ A through unit rules: infinitely many trees for "x"
    pg = plain(
        nonterminals=["S", "T"],
        terminals=["x"],
        axiom="S",
        components=[("P", [("S", ("T",)), ("T", ("S",)), ("S", ("x",))])],
    )
    g = build_grammar(pg)
    assert count_parse_trees(g, ["x"], cap=50) == 50


def test_inactive_unit_cycle_counts_normally():
    # the T<->U cycle never derives anything; S -> x still has one tree
    pg = plain(
        nonterminals=["S", "T", "U"],
        terminals=["x"],
        axiom="S",
        components=[("P", [("S", ("x",)), ("T", ("U",)), ("U", ("T",))])],
    )
    g = build_grammar(pg)
    assert count_parse_trees(g, ["x"], cap=50) == 1


def test_not_epsilon_free_guard():
    g = build_grammar(CORPUS["catalan"])
    prod = g.components[0].productions[0]
    # forge an erasing rule bypassing the constructor, to exercise the guard
    forged = object.__new__(type(prod))
    object.__setattr__(forged, "lhs", prod.lhs)
    object.__setattr__(forged, "rhs", ())
    comp = object.__new__(type(g.components[0]))
    object.__setattr__(comp, "id", "P")
    object.__setattr__(comp, "productions", (forged,))
    forged_grammar = object.__new__(type(g))
    for field_name in ("nonterminals", "terminals", "axiom", "default_mode"):
        object.__setattr__(forged_grammar, field_name, getattr(g, field_name))
    object.__setattr__(forged_grammar, "components", (comp,))
    with pytest.raises(NotEpsilonFree):
        count_parse_trees(forged_grammar, ["a"], cap=10)
