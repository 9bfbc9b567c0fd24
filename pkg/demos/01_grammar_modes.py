#!/usr/bin/env python3
# Cooperating distributed grammars: several components take turns rewriting
# one shared string, and a derivation mode decides when each hands it back.
# This walk-through builds the classic three-component system whose t-mode
# language is { a^n b^n c^n } and pokes at it from every angle.

from grice.grammar import (
    DerivationMode,
    derive_in_mode,
    enumerate_language,
    form_text,
    membership,
    parse_grammar_file,
    replay,
    step,
)

CLASSIC = """
nonterminals: S A A' B B'
terminals: a b c
axiom: S
mode: t
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

g = parse_grammar_file(CLASSIC)
print("components:", [c.id for c in g.components])
print("file default mode:", g.default_mode)

# One rewriting step: P2 can attack either the A or the B of "AB".
form = g.form_from_text("AB")
for successor, production, position in sorted(step(g.component("P2"), form)):
    print(f"  step {production} @ {position}  ->  {form_text(successor)}")

# A whole t-mode block: P2 must keep rewriting until none of its rules
# applies, so both nonterminals get wrapped before the hand-off.
block = derive_in_mode(g.component("P2"), form, DerivationMode.terminal(),
                       max_steps=10, max_len=20)
print("t-block results:", sorted(form_text(f) for f in block.forms))

# The language, mode by mode. Terminal mode forces the components to
# cooperate all the way to a^n b^n c^n; star mode lets partial work leak
# through and the language degenerates.
for mode in (DerivationMode.terminal(), DerivationMode.star(), DerivationMode.exactly(2)):
    words = enumerate_language(g, mode, max_len=9, max_steps=40).words
    print(f"L({mode}) up to length 9:", sorted("".join(w) for w in words))

# Membership comes with a replayable witness: which component worked when,
# which rules fired where.
trace = membership(g, DerivationMode.terminal(), "aabbcc", max_steps=40)
print("witness for 'aabbcc':")
for b in trace.blocks:
    steps = "; ".join(f"{s.production} @ {s.position}" for s in b.steps)
    print(f"  {b.component_id} [{b.mode}]: {steps}  =>  {form_text(b.result)}")

# Replaying the trace from the axiom reproduces the word exactly.
assert form_text(replay(trace, g.axiom_form)) == "aabbcc"
print("replay check: ok")
