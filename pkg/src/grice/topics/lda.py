"""Latent Dirichlet allocation by collapsed Gibbs sampling.

Training runs a single sequential sampler over token-topic assignments;
``phi`` (topic-word) and ``theta`` (document-topic) are posterior-mean
estimates averaged over the post-burn-in sweeps. Everything is
bit-deterministic given the corpus and config (including the seed):
randomness comes from an explicit counter-based stream, never from global
RNG state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._gibbs import init_assignments, run_train_loop, splitmix64, _MASK64


class TopicModelError(Exception):
    """Base class for topic-model failures."""


class EmptyCorpus(TopicModelError):
    """Training corpus has no documents (or a document with no tokens)."""


class EmptyAfterFiltering(TopicModelError):
    """Every token of an inference document was out of vocabulary."""


@dataclass(frozen=True)
class Vocabulary:
    """Dense token <-> id bijection (ids 0..V-1, first-appearance order)."""

    tokens: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {tok: i for i, tok in enumerate(self.tokens)}
        if len(index) != len(self.tokens):
            raise ValueError("vocabulary tokens must be unique")
        object.__setattr__(self, "index", index)

    @classmethod
    def build(cls, documents: Iterable[Sequence[str]]) -> "Vocabulary":
        tokens: list[str] = []
        seen = set()
        for doc in documents:
            for tok in doc:
                if tok not in seen:
                    seen.add(tok)
                    tokens.append(tok)
        return cls(tuple(tokens))

    @property
    def size(self) -> int:
        return len(self.tokens)

    def encode(self, tokens: Sequence[str]) -> list[int]:
        """Token ids, silently dropping out-of-vocabulary tokens."""
        return [self.index[t] for t in tokens if t in self.index]


@dataclass(frozen=True)
class Corpus:
    """Documents as token-id sequences over a shared vocabulary."""

    vocabulary: Vocabulary
    documents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        V = self.vocabulary.size
        for d, doc in enumerate(self.documents):
            for tid in doc:
                if not (0 <= tid < V):
                    raise ValueError(f"document {d} has token id {tid} outside 0..{V - 1}")

    @classmethod
    def from_token_lists(cls, docs: Sequence[Sequence[str]]) -> "Corpus":
        vocab = Vocabulary.build(docs)
        return cls(vocab, tuple(tuple(vocab.index[t] for t in doc) for doc in docs))


@dataclass(frozen=True)
class LdaConfig:
    k: int
    alpha: float
    beta: float
    sweeps: int
    burn_in: int
    seed: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if self.sweeps < 1:
            raise ValueError(f"sweeps must be >= 1, got {self.sweeps}")
        if not (0 <= self.burn_in < self.sweeps):
            raise ValueError(f"burn_in must lie in [0, sweeps), got {self.burn_in}")


@dataclass(frozen=True, eq=False)
class TopicModel:
    """Trained model: phi rows are topic word-distributions, theta_train the
    per-training-document topic mixtures; both averaged posterior samples."""

    phi: np.ndarray
    theta_train: np.ndarray
    config: LdaConfig
    vocabulary: Vocabulary

    @property
    def k(self) -> int:
        return int(self.phi.shape[0])

    def to_json(self) -> str:
        payload = {
            "config": {
                "k": self.config.k,
                "alpha": self.config.alpha,
                "beta": self.config.beta,
                "sweeps": self.config.sweeps,
                "burn_in": self.config.burn_in,
                "seed": self.config.seed,
            },
            "vocabulary": list(self.vocabulary.tokens),
            "phi": [list(map(float, row)) for row in self.phi],
            "thetaTrain": [list(map(float, row)) for row in self.theta_train],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "TopicModel":
        payload = json.loads(text)
        cfg = payload["config"]
        config = LdaConfig(
            k=cfg["k"], alpha=cfg["alpha"], beta=cfg["beta"],
            sweeps=cfg["sweeps"], burn_in=cfg["burn_in"], seed=cfg["seed"],
        )
        return cls(
            phi=np.array(payload["phi"], dtype=np.float64),
            theta_train=np.array(payload["thetaTrain"], dtype=np.float64),
            config=config,
            vocabulary=Vocabulary(tuple(payload["vocabulary"])),
        )


def train(corpus: Corpus, cfg: LdaConfig, *, use_numba: bool = True) -> TopicModel:
    """Collapsed Gibbs over token-topic assignments.

    Raises EmptyCorpus when there are no documents or a document is empty.
    ``use_numba=False`` forces the pure-Python mirror of the kernel (slow,
    bit-identical; used by tests).
    """
    if not corpus.documents:
        raise EmptyCorpus("corpus has no documents")
    for d, doc in enumerate(corpus.documents):
        if not doc:
            raise EmptyCorpus(f"document {d} has no tokens")

    K = cfg.k
    V = corpus.vocabulary.size
    D = len(corpus.documents)
    doc_of = np.concatenate([np.full(len(doc), d, dtype=np.int64)
                             for d, doc in enumerate(corpus.documents)])
    word_of = np.concatenate([np.array(doc, dtype=np.int64) for doc in corpus.documents])
    doc_len = np.array([len(doc) for doc in corpus.documents], dtype=np.float64)
    W = word_of.shape[0]

    z, state = init_assignments(W, K, cfg.seed)
    n_dk = np.zeros((D, K), dtype=np.float64)
    n_kw = np.zeros((K, V), dtype=np.float64)
    n_k = np.zeros(K, dtype=np.float64)
    for i in range(W):
        n_dk[doc_of[i], z[i]] += 1.0
        n_kw[z[i], word_of[i]] += 1.0
        n_k[z[i]] += 1.0

    phi_acc = np.zeros((K, V), dtype=np.float64)
    theta_acc = np.zeros((D, K), dtype=np.float64)
    run_train_loop(doc_of, word_of, doc_len, z, n_dk, n_kw, n_k,
                   cfg.alpha, cfg.beta, cfg.sweeps, cfg.burn_in, state,
                   phi_acc, theta_acc, use_numba=use_numba)

    samples = cfg.sweeps - cfg.burn_in
    return TopicModel(phi=phi_acc / samples, theta_train=theta_acc / samples,
                      config=cfg, vocabulary=corpus.vocabulary)


def infer(model: TopicModel, doc: Sequence[int], sweeps: int, seed: int) -> np.ndarray:
    """Fold-in Gibbs with phi frozen; returns the doc's topic distribution.

    Out-of-vocabulary ids are dropped; the first half of the sweeps is
    treated as burn-in and theta averages the rest. Deterministic given
    the seed.
    """
    if sweeps < 1:
        raise ValueError(f"sweeps must be >= 1, got {sweeps}")
    K = model.k
    V = model.vocabulary.size
    ids = [int(t) for t in doc if 0 <= int(t) < V]
    if not ids:
        raise EmptyAfterFiltering("no in-vocabulary tokens to infer from")

    alpha = model.config.alpha
    state = seed & _MASK64
    n_k = np.zeros(K, dtype=np.float64)
    z = []
    for _ in ids:
        state, u = splitmix64(state)
        t = min(int(u * K), K - 1)
        z.append(t)
        n_k[t] += 1.0

    phi = model.phi
    n_tokens = float(len(ids))
    burn = sweeps // 2
    theta_acc = np.zeros(K, dtype=np.float64)
    samples = 0
    for s in range(sweeps):
        for i, w in enumerate(ids):
            k = z[i]
            n_k[k] -= 1.0
            acc = 0.0
            probs = [0.0] * K
            for t in range(K):
                p = phi[t, w] * (n_k[t] + alpha)
                probs[t] = p
                acc += p
            state, u = splitmix64(state)
            ru = u * acc
            run = 0.0
            nk = K - 1
            for t in range(K):
                run += probs[t]
                if ru < run:
                    nk = t
                    break
            z[i] = nk
            n_k[nk] += 1.0
        if s >= burn:
            theta_acc += (n_k + alpha) / (n_tokens + K * alpha)
            samples += 1
    return theta_acc / samples
