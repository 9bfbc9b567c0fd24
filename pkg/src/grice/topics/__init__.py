"""Topic modelling: from-scratch collapsed-Gibbs LDA and Hellinger similarity."""

from .lda import (
    Corpus,
    EmptyAfterFiltering,
    EmptyCorpus,
    LdaConfig,
    TopicModel,
    TopicModelError,
    Vocabulary,
    infer,
    train,
)
from .similarity import DimensionMismatch, NotNormalized, hellinger, similarity
from .tokenize import STOPWORDS, tokenize, words

__all__ = [
    "Corpus",
    "DimensionMismatch",
    "EmptyAfterFiltering",
    "EmptyCorpus",
    "LdaConfig",
    "NotNormalized",
    "STOPWORDS",
    "TopicModel",
    "TopicModelError",
    "Vocabulary",
    "hellinger",
    "infer",
    "similarity",
    "tokenize",
    "train",
    "words",
]
