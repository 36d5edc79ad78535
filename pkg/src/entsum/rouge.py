"""Stopword-free unigram overlap (ROUGE-1) and score averaging.

Deliberately independent of the summarizer's tokenizer: text is lowercased
and split on non-alphanumeric boundaries, stopwords are dropped, and the
remaining unigrams are compared as clipped multisets.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import lexicon

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class RougeReport:
    recall: float
    precision: float
    f_score: float
    matched: int
    ref_count: int
    sys_count: int


def content_unigrams(text: str, stopwords: Iterable[str] | None = None) -> list[str]:
    sw = frozenset(stopwords) if stopwords is not None else lexicon.stopwords()
    return [t for t in _TOKEN_RE.findall(text.lower()) if t not in sw]


def rouge1(
    system: str,
    reference: str,
    stopwords: Iterable[str] | None = None,
) -> RougeReport:
    """Clipped unigram recall/precision/F between two texts.

    matched = sum over unigrams of min(system count, reference count).
    Empty sides score 0 on the affected metric; F is the harmonic mean,
    0 when recall and precision are both 0.
    """
    sw = frozenset(stopwords) if stopwords is not None else lexicon.stopwords()
    sys_counts = Counter(content_unigrams(system, sw))
    ref_counts = Counter(content_unigrams(reference, sw))
    matched = sum((sys_counts & ref_counts).values())
    sys_total = sum(sys_counts.values())
    ref_total = sum(ref_counts.values())
    recall = matched / ref_total if ref_total else 0.0
    precision = matched / sys_total if sys_total else 0.0
    f = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return RougeReport(recall, precision, f, matched, ref_total, sys_total)


def weighted_average(values: Sequence[tuple[float, int]]) -> float:
    """Document-count-weighted mean of (score, count) pairs."""
    if not values:
        raise ValueError("weighted_average needs at least one (score, count) pair")
    for score, count in values:
        if count < 1:
            raise ValueError(f"document counts must be >= 1, got {count}")
    total = sum(count for _, count in values)
    return sum(score * count for score, count in values) / total
