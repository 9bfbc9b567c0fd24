from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hellinger_direct

from grice.topics import (
    Corpus,
    DimensionMismatch,
    EmptyAfterFiltering,
    EmptyCorpus,
    LdaConfig,
    NotNormalized,
    STOPWORDS,
    TopicModel,
    Vocabulary,
    hellinger,
    infer,
    similarity,
    tokenize,
    train,
    words,
)
from grice.topics.synthetic import COOKING_WORDS, SPACE_WORDS, true_phi, two_topic_corpus


class TestTokenize:
    def test_words_keeps_stopwords(self):
        assert words("The chef, who bakes!") == ["the", "chef", "who", "bakes"]

    def test_tokenize_filters(self):
        toks = tokenize("I think the chef is at the oven, no?")
        assert toks == ["think", "chef", "oven"]

    def test_short_tokens_dropped(self):
        assert tokenize("a b cd") == ["cd"]

    def test_synthetic_words_survive_filter(self):
        for w in COOKING_WORDS + SPACE_WORDS:
            assert tokenize(w) == [w]


class TestVocabularyCorpus:
    def test_dense_bijection(self):
        v = Vocabulary.build([["b", "a"], ["a", "c"]])
        assert v.tokens == ("b", "a", "c")
        assert v.index == {"b": 0, "a": 1, "c": 2}
        assert v.size == 3

    def test_encode_drops_unknown(self):
        v = Vocabulary(("x", "y"))
        assert v.encode(["x", "zzz", "y", "y"]) == [0, 1, 1]

    def test_duplicate_tokens_rejected(self):
        with pytest.raises(ValueError):
            Vocabulary(("x", "x"))

    def test_corpus_id_bounds(self):
        v = Vocabulary(("x",))
        with pytest.raises(ValueError):
            Corpus(v, ((0, 1),))


class TestLdaConfig:
    def test_valid(self):
        LdaConfig(k=2, alpha=0.5, beta=0.01, sweeps=10, burn_in=5, seed=0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(k=0),
            dict(alpha=0.0),
            dict(beta=-1.0),
            dict(sweeps=0),
            dict(burn_in=10),
            dict(burn_in=-1),
        ],
    )
    def test_invalid(self, kwargs):
        base = dict(k=2, alpha=0.5, beta=0.01, sweeps=10, burn_in=5, seed=0)
        base.update(kwargs)
        with pytest.raises(ValueError):
            LdaConfig(**base)


@pytest.fixture(scope="module")
def tiny_corpus():
    docs = [["hot", "hot", "sun"], ["sun", "moon", "moon", "moon"], ["hot", "moon", "sun"]]
    return Corpus.from_token_lists(docs)


@pytest.fixture(scope="module")
def synthetic_model():
    corpus = two_topic_corpus(seed=2024)
    cfg = LdaConfig(k=2, alpha=0.5, beta=0.01, sweeps=500, burn_in=250, seed=11)
    return train(corpus, cfg)


class TestTrain:
    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            train(Corpus(Vocabulary(("x",)), ()), LdaConfig(1, 0.5, 0.5, 2, 1, 0))
        with pytest.raises(EmptyCorpus):
            train(Corpus(Vocabulary(("x",)), ((0,), ())), LdaConfig(1, 0.5, 0.5, 2, 1, 0))

    def test_k1_forced_assignments(self, tiny_corpus):
        # with one topic, phi is the smoothed empirical word frequency
        beta = 0.25
        cfg = LdaConfig(k=1, alpha=0.5, beta=beta, sweeps=8, burn_in=3, seed=5)
        model = train(tiny_corpus, cfg)
        counts = np.zeros(tiny_corpus.vocabulary.size)
        for doc in tiny_corpus.documents:
            for t in doc:
                counts[t] += 1
        expected = (counts + beta) / (counts.sum() + tiny_corpus.vocabulary.size * beta)
        assert np.allclose(model.phi[0], expected, atol=1e-12)
        assert np.allclose(model.theta_train, 1.0, atol=1e-12)

    def test_seeded_determinism_bitwise(self, tiny_corpus):
        cfg = LdaConfig(k=3, alpha=0.3, beta=0.05, sweeps=40, burn_in=10, seed=99)
        a = train(tiny_corpus, cfg)
        b = train(tiny_corpus, cfg)
        assert np.array_equal(a.phi, b.phi)
        assert np.array_equal(a.theta_train, b.theta_train)
        assert a.to_json() == b.to_json()

    def test_different_seeds_differ(self, tiny_corpus):
        cfg = LdaConfig(k=2, alpha=0.5, beta=0.1, sweeps=40, burn_in=10, seed=1)
        other = LdaConfig(k=2, alpha=0.5, beta=0.1, sweeps=40, burn_in=10, seed=2)
        assert not np.array_equal(train(tiny_corpus, cfg).phi, train(tiny_corpus, other).phi)

    def test_numba_and_python_paths_agree_bitwise(self, tiny_corpus):
        cfg = LdaConfig(k=2, alpha=0.5, beta=0.1, sweeps=25, burn_in=5, seed=42)
        fast = train(tiny_corpus, cfg, use_numba=True)
        slow = train(tiny_corpus, cfg, use_numba=False)
        assert np.array_equal(fast.phi, slow.phi)
        assert np.array_equal(fast.theta_train, slow.theta_train)

    def test_normalization(self, synthetic_model):
        assert np.all(synthetic_model.phi >= 0)
        assert np.all(synthetic_model.theta_train >= 0)
        assert np.max(np.abs(synthetic_model.phi.sum(axis=1) - 1.0)) < 1e-9
        assert np.max(np.abs(synthetic_model.theta_train.sum(axis=1) - 1.0)) < 1e-9

    def test_synthetic_recovery_single_seed(self, synthetic_model):
        tp = true_phi()
        phi = synthetic_model.phi
        straight = (hellinger(phi[0], tp[0]) + hellinger(phi[1], tp[1])) / 2
        flipped = (hellinger(phi[0], tp[1]) + hellinger(phi[1], tp[0])) / 2
        assert min(straight, flipped) <= 0.2


class TestInfer:
    def test_k1_returns_unit(self, tiny_corpus):
        model = train(tiny_corpus, LdaConfig(1, 0.5, 0.5, 4, 1, 0))
        theta = infer(model, [0, 1], sweeps=10, seed=3)
        assert theta.shape == (1,)
        assert theta[0] == pytest.approx(1.0, abs=1e-12)

    def test_all_oov_raises(self, tiny_corpus):
        model = train(tiny_corpus, LdaConfig(1, 0.5, 0.5, 4, 1, 0))
        with pytest.raises(EmptyAfterFiltering):
            infer(model, [99, -1], sweeps=10, seed=3)

    def test_oov_dropped_not_fatal(self, tiny_corpus):
        model = train(tiny_corpus, LdaConfig(2, 0.5, 0.5, 20, 5, 0))
        theta = infer(model, [0, 99], sweeps=10, seed=3)
        assert theta.shape == (2,)

    def test_single_topic_doc_lands_on_its_topic(self, synthetic_model):
        vocab = synthetic_model.vocabulary
        cooking_doc = vocab.encode(["oven", "dough", "bread", "chef", "flour", "bake"])
        space_doc = vocab.encode(["orbit", "planet", "rocket", "galaxy", "comet", "solar"])
        t_cook = infer(synthetic_model, cooking_doc, sweeps=60, seed=17)
        t_space = infer(synthetic_model, space_doc, sweeps=60, seed=17)
        # the two pure documents must land on opposite (permuted) topics
        assert int(np.argmax(t_cook)) != int(np.argmax(t_space))
        assert t_cook.max() > 0.8 and t_space.max() > 0.8

    def test_theta_normalized_and_deterministic(self, synthetic_model):
        doc = synthetic_model.vocabulary.encode(["oven", "orbit", "bread", "planet"])
        a = infer(synthetic_model, doc, sweeps=30, seed=5)
        b = infer(synthetic_model, doc, sweeps=30, seed=5)
        assert np.array_equal(a, b)
        assert abs(a.sum() - 1.0) < 1e-9


class TestSimilarity:
    def test_identical_is_one(self):
        assert similarity([0.25, 0.75], [0.25, 0.75]) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_is_zero(self):
        assert similarity([1.0, 0.0], [0.0, 1.0]) == pytest.approx(0.0, abs=1e-12)

    def test_spec_value_against_direct_formula(self):
        p, q = (0.9, 0.1), (0.1, 0.9)
        expected = 1.0 - hellinger_direct(p, q)
        got = similarity(p, q)
        assert got == pytest.approx(expected, abs=1e-12)
        assert got == pytest.approx(0.36754, abs=5e-5)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            similarity([1.0], [0.5, 0.5])

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            similarity([0.5, 0.6], [0.5, 0.5])
        with pytest.raises(NotNormalized):
            similarity([1.5, -0.5], [0.5, 0.5])

    @given(
        st.lists(st.floats(min_value=1e-6, max_value=1.0), min_size=1, max_size=8),
        st.data(),
    )
    @settings(max_examples=200, deadline=None)
    def test_properties(self, raw_p, data):
        raw_q = data.draw(
            st.lists(st.floats(min_value=1e-6, max_value=1.0),
                     min_size=len(raw_p), max_size=len(raw_p))
        )
        p = np.array(raw_p) / np.sum(raw_p)
        q = np.array(raw_q) / np.sum(raw_q)
        s_pq = similarity(p, q)
        s_qp = similarity(q, p)
        assert 0.0 <= s_pq <= 1.0
        assert s_pq == pytest.approx(s_qp, abs=1e-12)
        assert similarity(p, p) == pytest.approx(1.0, abs=1e-9)
        assert s_pq == pytest.approx(1.0 - hellinger_direct(p, q), abs=1e-9)


class TestPersistence:
    def test_round_trip_stable(self, tiny_corpus):
        cfg = LdaConfig(k=2, alpha=0.5, beta=0.1, sweeps=20, burn_in=5, seed=8)
        model = train(tiny_corpus, cfg)
        text = model.to_json()
        back = TopicModel.from_json(text)
        assert back.to_json() == text
        assert np.array_equal(back.phi, model.phi)
        assert np.array_equal(back.theta_train, model.theta_train)
        assert back.config == model.config
        assert back.vocabulary.tokens == model.vocabulary.tokens
