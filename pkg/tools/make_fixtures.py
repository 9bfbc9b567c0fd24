#!/usr/bin/env python3
"""Regenerate the committed model resource and transcript fixtures.

Everything here is deterministic; re-running must reproduce the committed
bytes (the default topic model ships inside the package, the transcripts
under fixtures/). The script also sanity-checks that each fixture sits in
the detector band it was designed for.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from grice.topics import LdaConfig, tokenize, train, words
from grice.topics.synthetic import corpus_text, two_topic_corpus

RESOURCES = REPO / "src" / "grice" / "resources"
FIXTURES = REPO / "fixtures"

MODEL_SEED = 20240801
MODEL_CFG = LdaConfig(k=2, alpha=0.5, beta=0.01, sweeps=500, burn_in=250, seed=7)

CLEAN_TURNS = [
    "The chef warmed the oven and prepared fresh dough for bread.",
    "She kneaded the dough with flour and a pinch of salt.",
    "The butter melted in the pan beside the garlic.",
    "A rich sauce with pepper and herb simmered on the grill.",
    "The kitchen smelled of roast bread and warm spice.",
    "Her recipe called for cream and a sharp knife.",
]

OFFTOPIC_TURNS = [
    "The chef warmed the oven and prepared fresh dough for bread.",
    "She kneaded the dough with flour and a pinch of salt.",
    "The butter melted in the pan beside the garlic.",
    "A rich sauce with pepper and herb simmered on the grill.",
    "A bright comet crossed the orbit of a distant planet near the galaxy core.",
    "Back in the kitchen the oven held warm bread with butter and sauce.",
]

_RAMBLE_BITS = [
    "chef", "took", "the", "dough", "then", "more", "flour", "then", "butter",
    "plus", "garlic", "salt", "pepper", "herb", "spice", "cream", "sauce",
    "bread", "oven", "pan", "grill", "knife", "kitchen", "roast", "recipe",
    "bake",
]


def rambling_turn() -> str:
    # 80 raw tokens, comfortably over 60 content tokens
    tokens = (_RAMBLE_BITS * 4)[:80]
    return " ".join(tokens)


RAMBLING_TURNS = [
    "The chef warmed the oven and prepared fresh dough for bread.",
    "She kneaded the dough with flour and a pinch of salt.",
    rambling_turn(),
    "The kitchen smelled of roast bread and warm spice.",
]


def transcript_lines(dialogue_id: str, turns: list[str]) -> str:
    lines = [json.dumps({"dialogueId": dialogue_id}, sort_keys=True, separators=(",", ":"))]
    for text in turns:
        record = {"speaker": "human", "text": text, "assertions": []}
        lines.append(json.dumps(record, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def main() -> None:
    corpus = two_topic_corpus(seed=MODEL_SEED)
    model = train(corpus, MODEL_CFG)
    (RESOURCES / "topic_model.json").write_text(model.to_json() + "\n", "utf-8")
    print(f"wrote {RESOURCES / 'topic_model.json'} (V={model.vocabulary.size})")

    FIXTURES.mkdir(exist_ok=True)
    (FIXTURES / "synthetic_corpus.txt").write_text(corpus_text(corpus), "utf-8")

    for name, turns in (("clean", CLEAN_TURNS), ("offtopic", OFFTOPIC_TURNS),
                        ("rambling", RAMBLING_TURNS)):
        path = FIXTURES / f"{name}.json"
        path.write_text(transcript_lines(name, turns), "utf-8")
        print(f"wrote {path}")

    # sanity: fixture turns sit in the bands they were designed for
    for text in CLEAN_TURNS + OFFTOPIC_TURNS + RAMBLING_TURNS[:2] + RAMBLING_TURNS[3:]:
        raw, content = len(words(text)), len(tokenize(text))
        assert raw <= 30, (text, raw)
        assert 3 <= content <= 60, (text, content)
        in_vocab = [t for t in tokenize(text) if t in model.vocabulary.index]
        assert len(in_vocab) >= 3, (text, in_vocab)
    ramble = RAMBLING_TURNS[2]
    assert len(words(ramble)) == 80
    assert len(tokenize(ramble)) > 60, len(tokenize(ramble))
    print("fixture band checks passed")


if __name__ == "__main__":
    main()
