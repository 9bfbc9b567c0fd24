#!/usr/bin/env python3
# A scripted conversation through the full engine: every human turn is
# monitored, breaches become recovery acts, an interrupt downgrades the
# human's derivation mode to <=1 for exactly one turn, and everything the
# participants do lands on the shared blackboard as dialogue-act symbols.

from grice.dialogue import Utterance, default_models, handle_turn, new_dialogue, serialize_trace
from grice.grammar import form_text

models = default_models()
state = new_dialogue({"brevity_max_tokens": 100}, models, "demo-dialogue")
print("blackboard starts as:", form_text(state.blackboard))

SCRIPT = [
    # a clean turn, then an over-detailed one, then the constrained turn
    "The chef warmed the oven and prepared fresh dough for bread.",
    " ".join(["dough", "flour", "butter", "salt", "pepper"] * 13),
    "The oven is hot. The bread is done. The sauce is thick.",
    "The dough rests quietly. The butter melts slowly.",
    "Goodbye.",
]

for text in SCRIPT:
    preview = text if len(text) < 60 else text[:57] + "..."
    print(f"\nhuman: {preview}")
    turn, acts, reply, state = handle_turn(
        state, Utterance("human", text, assertions=()), models
    )
    for breach in turn.breaches:
        print(f"  breach: {breach.maxim.value}/{breach.kind.value} severity {breach.severity:.2f}")
    for act in acts:
        switch = f" (mode switch: {act.mode_switch[0]} -> {act.mode_switch[1]})" if act.mode_switch else ""
        print(f"  act: {act.tag.value}{switch}")
    print(f"  appended: {list(turn.act_symbols)}  modes now: {state.modes}")
    if reply:
        print(f"robot: {reply.text}")
    print(f"  blackboard: {form_text(state.blackboard)}")

print("\nfinal trace document (first 3 lines):")
for line in serialize_trace(state, models).splitlines()[:3]:
    print("  " + line[:100] + ("..." if len(line) > 100 else ""))
