"""Bounded similarity between probability distributions.

similarity(p, q) = 1 - H(p, q) with the Hellinger distance
H(p, q) = (1/sqrt(2)) * ||sqrt(p) - sqrt(q)||_2, so the score is symmetric,
lives in [0, 1], and equals 1 exactly when p == q.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .lda import TopicModelError

_SUM_TOL = 1e-6


class DimensionMismatch(TopicModelError):
    """p and q have different lengths."""


class NotNormalized(TopicModelError):
    """A distribution does not sum to 1 (within 1e-6) or has negatives."""


def _check(name: str, dist: Sequence[float]) -> np.ndarray:
    arr = np.asarray(dist, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be a vector, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionMismatch(f"{name} is empty")
    if np.any(arr < -1e-12):
        raise NotNormalized(f"{name} has negative entries")
    total = float(arr.sum())
    if abs(total - 1.0) > _SUM_TOL:
        raise NotNormalized(f"{name} sums to {total}, expected 1 within {_SUM_TOL}")
    return np.clip(arr, 0.0, None)


def hellinger(p: Sequence[float], q: Sequence[float]) -> float:
    """Hellinger distance in [0, 1]."""
    ap = _check("p", p)
    aq = _check("q", q)
    if ap.shape != aq.shape:
        raise DimensionMismatch(f"length mismatch: {ap.size} vs {aq.size}")
    dist = float(np.linalg.norm(np.sqrt(ap) - np.sqrt(aq)) / math.sqrt(2.0))
    return min(max(dist, 0.0), 1.0)


def similarity(p: Sequence[float], q: Sequence[float]) -> float:
    """1 - Hellinger(p, q); 1 for identical, 0 for disjoint support."""
    return min(max(1.0 - hellinger(p, q), 0.0), 1.0)
