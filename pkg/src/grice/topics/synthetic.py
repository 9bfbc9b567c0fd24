"""Two-topic synthetic corpus with disjoint vocabularies.

Used by the demos, the CLI fixtures, and the recovery tests: documents are
drawn from a known two-topic model whose word distributions are uniform
over two disjoint 20-word blocks, so the true phi is known exactly and
recovery can be measured up to topic permutation.
"""

from __future__ import annotations

import numpy as np

from .lda import Corpus, Vocabulary

COOKING_WORDS = (
    "bake", "bread", "butter", "chef", "cream", "dough", "flour", "garlic",
    "grill", "herb", "kitchen", "knife", "oven", "pan", "pepper", "recipe",
    "roast", "salt", "sauce", "spice",
)

SPACE_WORDS = (
    "asteroid", "comet", "cosmos", "crater", "galaxy", "gravity", "lunar",
    "meteor", "nebula", "orbit", "planet", "probe", "rocket", "satellite",
    "solar", "starlight", "telescope", "universe", "venus", "voyage",
)

VOCABULARY = Vocabulary(COOKING_WORDS + SPACE_WORDS)


def true_phi() -> np.ndarray:
    """The generating topic-word matrix: uniform over each 20-word block."""
    V = VOCABULARY.size
    phi = np.zeros((2, V))
    phi[0, : len(COOKING_WORDS)] = 1.0 / len(COOKING_WORDS)
    phi[1, len(COOKING_WORDS):] = 1.0 / len(SPACE_WORDS)
    return phi


def two_topic_corpus(seed: int, n_docs: int = 200, doc_len: int = 25,
                     concentration: float = 0.3) -> Corpus:
    """Sample ``n_docs`` documents from the known model.

    Each document draws its topic mixture from Dirichlet(concentration),
    then tokens from the mixed word distributions; a small concentration
    makes documents mostly single-topic.
    """
    rng = np.random.default_rng(seed)
    phi = true_phi()
    docs = []
    for _ in range(n_docs):
        theta = rng.dirichlet([concentration, concentration])
        topics = rng.choice(2, size=doc_len, p=theta)
        words = [int(rng.choice(VOCABULARY.size, p=phi[t])) for t in topics]
        docs.append(tuple(words))
    return Corpus(VOCABULARY, tuple(docs))


def corpus_text(corpus: Corpus) -> str:
    """One document per line, tokens space-separated (the CLI corpus format)."""
    lines = []
    for doc in corpus.documents:
        lines.append(" ".join(corpus.vocabulary.tokens[t] for t in doc))
    return "\n".join(lines) + "\n"
