"""Candidate keyphrase extraction and keyword scoring.

Each sentence's token stream is cut at punctuation, stopwords, and verbs;
the surviving token runs are candidate segments. A keyword is a single
candidate token (a merged entity counts as one keyword). Scores are kept
as exact fractions so that score * frequency == degree holds without
tolerance and every downstream ordering is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lexicon
from .preprocess import Sentence, Token

Segment = tuple[Token, ...]


def keyword_key(token: Token) -> str:
    """Normalized keyword identity of a token ("j k rowling")."""
    return " ".join(token.words)


def _has_punct(gap: str) -> bool:
    return any(not c.isspace() for c in gap)


def extract_candidates(
    sentence: Sentence,
    stopwords: frozenset[str],
    verbs: frozenset[str],
) -> list[Segment]:
    """Cut the sentence's tokens into candidate segments.

    A cut happens before a token when punctuation sits between it and the
    previous token, and at every stopword or verb token (the delimiter
    itself is dropped). Merged entity tokens are never delimiters.
    """
    segments: list[Segment] = []
    current: list[Token] = []

    def flush() -> None:
        if current:
            segments.append(tuple(current))
            current.clear()

    prev_end: int | None = None
    for tok in sentence.tokens:
        if prev_end is not None and _has_punct(sentence.text[prev_end : tok.span[0]]):
            flush()
        prev_end = tok.span[1]
        if tok.is_entity_merge:
            current.append(tok)
            continue
        if tok.normalized in stopwords or lexicon.is_verb(tok.normalized, verbs):
            flush()
        else:
            current.append(tok)
    flush()
    return segments


@dataclass(frozen=True)
class KeywordStats:
    keyword: str
    frequency: int
    degree: int
    score: Fraction


def compute_keyword_stats(
    candidates_by_sentence: list[list[Segment]],
    include_self: bool = False,
) -> dict[str, KeywordStats]:
    """Frequency, degree, and degree/frequency score per keyword.

    Co-occurrence is counted at sentence level: each occurrence of a
    keyword contributes the number of other keyword occurrences in the
    same sentence's segments. With ``include_self`` the occurrence also
    counts itself (degree >= frequency), mirroring the phrase-internal
    convention some keyword extractors use.
    """
    frequency: dict[str, int] = {}
    degree: dict[str, int] = {}
    for segments in candidates_by_sentence:
        occurrences = [keyword_key(tok) for seg in segments for tok in seg]
        total = len(occurrences)
        contribution = total if include_self else total - 1
        for kw in occurrences:
            frequency[kw] = frequency.get(kw, 0) + 1
            degree[kw] = degree.get(kw, 0) + contribution
    return {
        kw: KeywordStats(kw, frequency[kw], degree[kw], Fraction(degree[kw], frequency[kw]))
        for kw in frequency
    }


@dataclass(frozen=True)
class Keyphrase:
    """A unified candidate segment with its summed member-keyword score."""

    words: tuple[str, ...]
    sentence_occurrences: tuple[tuple[int, tuple[int, int]], ...]
    score: Fraction

    @property
    def flat_words(self) -> tuple[str, ...]:
        """Word sequence with multiword member keywords expanded."""
        return tuple(w for kw in self.words for w in kw.split())


def score_keyphrases(
    stats: dict[str, KeywordStats],
    candidates_by_sentence: list[list[Segment]],
) -> list[Keyphrase]:
    """One Keyphrase per distinct segment word sequence.

    Identical normalized segments are unified; their occurrence lists
    carry (sentence index, character span) records in document order.
    Keyphrase score is the sum of member keyword scores.
    """
    occurrences: dict[tuple[str, ...], list[tuple[int, tuple[int, int]]]] = {}
    for si, segments in enumerate(candidates_by_sentence):
        for seg in segments:
            key = tuple(keyword_key(tok) for tok in seg)
            span = (seg[0].span[0], seg[-1].span[1])
            occurrences.setdefault(key, []).append((si, span))
    return [
        Keyphrase(
            words=key,
            sentence_occurrences=tuple(occs),
            score=sum((stats[kw].score for kw in key), Fraction(0)),
        )
        for key, occs in occurrences.items()
    ]
