"""Word-similarity evaluation: dataset parsing, cosine, Spearman rank correlation.

Embeddings are scored by ranking pair cosines against human similarity
judgements.  Out-of-vocabulary pairs are skipped and counted, never
zero-filled, so coverage is always visible next to the correlation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .ca import EmbeddingSet


@dataclass(frozen=True)
class WordSimDataset:
    """(word_a, word_b, human score) triples, unordered duplicates averaged."""

    triples: tuple[tuple[str, str, float], ...]

    def __post_init__(self):
        if not self.triples:
            raise ValueError("word-similarity dataset is empty")

    def __len__(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class EvalReport:
    spearman_rho: float
    pairs_used: int
    pairs_skipped: int


def _split_line(line: str) -> list[str]:
    if "\t" in line:
        return [c.strip() for c in line.split("\t")]
    if "," in line:
        return [c.strip() for c in line.split(",")]
    return line.split()


def load_wordsim(path) -> WordSimDataset:
    """Parse "word_a word_b score" lines (tab, comma, or whitespace separated).

    Words are lowercased to match corpus tokenization.  A first line whose
    score field is not numeric is treated as a header; any other malformed
    line raises with its line number.  Duplicate unordered pairs are
    averaged.
    """
    scores: dict[tuple[str, str], list[float]] = {}
    order: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            cells = _split_line(line)
            if len(cells) < 3:
                raise ValueError(f"{path}:{lineno}: expected 'word_a word_b score'")
            try:
                value = float(cells[2])
            except ValueError:
                if lineno == 1:  # header row
                    continue
                raise ValueError(f"{path}:{lineno}: score {cells[2]!r} is not a number")
            a, b = cells[0].lower(), cells[1].lower()
            key = (a, b) if a <= b else (b, a)
            if key not in scores:
                scores[key] = []
                order.append(key)
            scores[key].append(value)
    if not order:
        raise ValueError(f"no usable lines in {path}")
    triples = tuple((a, b, math.fsum(vs) / len(vs)) for (a, b), vs in
                    ((key, scores[key]) for key in order))
    return WordSimDataset(triples)


def cosine(u, v) -> float:
    """u.v / (|u| |v|); zero vectors compare as 0 with a warning."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        warnings.warn("cosine of a zero vector is defined as 0", stacklevel=2)
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def _average_ranks(xs) -> list[float]:
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    ranks = [0.0] * len(xs)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and xs[order[j + 1]] == xs[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0  # ranks are 1-based
        for idx in order[i : j + 1]:
            ranks[idx] = avg
        i = j + 1
    return ranks


def spearman(xs, ys) -> float:
    """Pearson correlation of average-fractional ranks.

    A constant input list has no defined rank correlation and raises,
    rather than reporting 0.
    """
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise ValueError("need at least two pairs")
    if min(xs) == max(xs) or min(ys) == max(ys):
        raise ValueError("rank correlation is undefined for a constant list")
    rx = _average_ranks(xs)
    ry = _average_ranks(ys)
    mean = (len(xs) + 1) / 2.0  # both rank lists average to this
    dx = [r - mean for r in rx]
    dy = [r - mean for r in ry]
    num = math.fsum(a * b for a, b in zip(dx, dy))
    den = math.sqrt(math.fsum(a * a for a in dx) * math.fsum(b * b for b in dy))
    return num / den


def evaluate(e: EmbeddingSet, which: str, d: WordSimDataset) -> EvalReport:
    """Spearman correlation of pair cosines against human scores.

    ``which`` selects the row ("F") or column ("G") coordinates.  Pairs
    with either word out of vocabulary are skipped and counted.
    """
    labels, coords = e.coordinates(which)
    index = {lbl: i for i, lbl in enumerate(labels)}
    sims: list[float] = []
    human: list[float] = []
    skipped = 0
    for a, b, score in d.triples:
        ia = index.get(a)
        ib = index.get(b)
        if ia is None or ib is None:
            skipped += 1
            continue
        sims.append(cosine(coords[ia], coords[ib]))
        human.append(score)
    if not sims:
        raise ValueError("zero usable pairs: every dataset word is out of vocabulary")
    rho = spearman(sims, human)
    return EvalReport(spearman_rho=rho, pairs_used=len(sims), pairs_skipped=skipped)
