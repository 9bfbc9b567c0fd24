#!/usr/bin/env python3
# The four conversational-maxim detectors, one by one: quantity (too sparse
# or too detailed), quality (unsupported or contradicting claims), relation
# (topic drift), and manner (over-long or structurally ambiguous turns).

from grice.grammar import parse_grammar_file
from grice.monitor import (
    Assertion,
    BeliefStore,
    MonitorConfig,
    Polarity,
    check_ambiguity,
    check_brevity,
    check_quality,
    check_quantity,
    check_relevance,
    extract_assertions,
)

cfg = MonitorConfig()  # documented defaults: L_max=30, band 3..60, r_min=0.5
print("thresholds:", cfg.to_dict())


def show(label, event):
    if event is None:
        print(f"  {label}: ok")
    else:
        print(f"  {label}: {event.maxim.value}/{event.kind.value} "
              f"severity {event.severity:.3f} ({event.evidence})")


print("\nquantity band (content tokens after the stopword filter):")
show("1 token ", check_quantity(1, cfg))
show("30 tokens", check_quantity(30, cfg))
show("90 tokens", check_quantity(90, cfg))

print("\nbrevity (raw token count):")
show("20 words", check_brevity(["w"] * 20, cfg))
show("45 words", check_brevity(["w"] * 45, cfg))
show("90 words", check_brevity(["w"] * 90, cfg))

print("\nquality against a belief store:")
beliefs = BeliefStore.empty().add("sky", "color", "blue", Polarity.AFFIRMED)
for assertion in (
    Assertion("sky", "color", "blue"),                       # supported
    Assertion("sky", "color", "blue", Polarity.DENIED),      # contradiction
    Assertion("mars", "has", "rings"),                       # unsupported
    Assertion("mars", "has", "rings", hedged=True),          # hedged: exempt
):
    events = check_quality([assertion], beliefs)
    label = f"{assertion.subject} {assertion.predicate} {assertion.object}" + \
            (" (denied)" if assertion.polarity is Polarity.DENIED else "") + \
            (" (hedged)" if assertion.hedged else "")
    show(label, events[0] if events else None)

print("\nrelation (topic drift against a decayed context):")
context = (0.9, 0.1)
for turn_theta in ((0.85, 0.15), (0.1, 0.9)):
    event, context_after = check_relevance(turn_theta, context, cfg)
    show(f"turn theta {turn_theta}", event)
    print(f"    context {context} -> {tuple(round(x, 3) for x in context_after)}")

print("\nmanner/ambiguity against a reference grammar:")
toy = parse_grammar_file(
    "nonterminals: S\nterminals: a\naxiom: S\ncomponent G:\n  S -> S S\n  S -> a\n"
)
for n in (2, 3, 6):
    show(f"'{'a ' * n}'".strip(), check_ambiguity(["a"] * n, toy, cfg))

print("\nthe trivial free-text assertion extractor:")
for text in ("Mars is red.", "The sky is not green.", "I think venus is hot."):
    print(f"  {text!r} ->", [a.to_dict() for a in extract_assertions(text)])
