"""Shared tokenization for topic modelling and content-token counting.

Lowercase, split on non-alphanumerics, drop tokens shorter than two
characters and the fixed stopword list below. The same filter defines the
"content tokens" the quantity detector counts, so it lives here rather
than with the monitor.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[a-z0-9]+")

# Fixed, deliberately small English function-word list. Documented in the
# README; changing it changes content-token counts and topic inputs.
STOPWORDS = frozenset(
    """
    a an and are as at be been but by did do does for from had has have he
    her him his how i if in into is it its me my no nor not of on or our
    she so that the their them then there these they this to us was we
    were what when where which who will with would you your
    """.split()
)


def words(text: str) -> list[str]:
    """All lowercase word tokens, stopwords included (brevity counts these)."""
    return _TOKEN_RE.findall(text.lower())


def tokenize(text: str) -> list[str]:
    """Content tokens: lowercased words minus stopwords and one-char tokens."""
    return [t for t in words(text) if len(t) >= 2 and t not in STOPWORDS]
