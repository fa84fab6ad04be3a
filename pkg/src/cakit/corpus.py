"""Text ingestion: tokenization, vocabulary, windowed co-occurrence counting.

Counting uses a fixed symmetric window over token positions.  Words below
the frequency threshold stay in place but are masked out, so removing rare
words never creates new adjacencies; every retained count can only shrink
as the threshold rises.
"""

from __future__ import annotations

import logging
import string
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .tables import ContingencyTable

logger = logging.getLogger(__name__)

_PUNCT_TO_SPACE = str.maketrans({ch: " " for ch in string.punctuation})


@dataclass(frozen=True)
class CooccurrenceConfig:
    window: int = 2
    min_count: int = 0
    max_vocab: int | None = None
    lowercase: bool = True

    def __post_init__(self):
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if self.min_count < 0:
            raise ValueError(f"min_count must be >= 0, got {self.min_count}")


def tokenize(text: str, lowercase: bool = True) -> list[str]:
    """Split on whitespace after mapping punctuation to spaces."""
    if lowercase:
        text = text.lower()
    return text.translate(_PUNCT_TO_SPACE).split()


def count_cooccurrences(tokens, cfg: CooccurrenceConfig) -> ContingencyTable:
    """Count word/context pairs within the symmetric window into a square table.

    For every position i and offset d with 1 <= |d| <= window and i+d in
    range, the (word_i, word_{i+d}) cell is incremented, provided both
    tokens survive the vocabulary filter.  Rows and columns share the
    sorted vocabulary.
    """
    tokens = list(tokens)
    if not tokens:
        raise ValueError("token stream is empty")
    freq = Counter(tokens)
    vocab = {w for w, count in freq.items() if count >= cfg.min_count}
    if cfg.max_vocab is not None and len(vocab) > cfg.max_vocab:
        ranked = sorted(vocab, key=lambda w: (-freq[w], w))
        vocab = set(ranked[: cfg.max_vocab])
    if not vocab:
        raise ValueError("vocabulary is empty after filtering")
    labels = sorted(vocab)
    index = {w: i for i, w in enumerate(labels)}
    ids = [index.get(tok, -1) for tok in tokens]
    counts = np.zeros((len(labels), len(labels)))
    L = len(ids)
    for i, wi in enumerate(ids):
        if wi < 0:
            continue
        for j in range(i + 1, min(i + cfg.window + 1, L)):
            wj = ids[j]
            if wj < 0:
                continue
            counts[wi, wj] += 1.0
            counts[wj, wi] += 1.0
    if counts.sum() == 0:
        raise ValueError("no co-occurrence pairs within the window")
    return ContingencyTable.from_counts(counts, labels, labels)


def slice_tokens(tokens, percent: float) -> list[str]:
    """First ``percent`` % of the token stream (floor)."""
    if not 0 < percent <= 100:
        raise ValueError(f"slice percentage must be in (0, 100], got {percent}")
    tokens = list(tokens)
    return tokens[: int(len(tokens) * percent / 100.0)]


def load_stopwords(path) -> set[str]:
    """Newline-delimited UTF-8 word list; duplicates collapse into the set."""
    with open(path, encoding="utf-8") as fh:
        words = {line.strip() for line in fh if line.strip()}
    if not words:
        logger.warning("stop-word file %s is empty", path)
    return words
