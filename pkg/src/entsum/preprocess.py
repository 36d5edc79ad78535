"""Sentence segmentation, tokenization, and proper-noun merging.

The splitter ends sentences at ``.``, ``!`` and ``?`` but keeps three kinds
of periods inside a sentence: periods after known abbreviations (Dr., Mr.,
e.g.), periods after single uppercase initials (J. K. Rowling), and decimal
points between digits (1.24). The tokenizer splits on whitespace and strips
surrounding punctuation. Runs of two or more capitalized non-stopword tokens
are merged into a single entity token so that names behave as one word for
everything downstream.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import lexicon

_TERMINAL = ".!?"
_WORD_RE = re.compile(r"\S+")


def norm_words(text: str) -> tuple[str, ...]:
    """Lowercased words of ``text`` with surrounding punctuation removed.

    This is the matching currency used across modules: keywords, graph
    nodes, and triple parts all compare equal through it. Multiword
    surfaces (merged entities, whole subjects) expand to one word per
    constituent: "J. K. Rowling" -> ("j", "k", "rowling").
    """
    words = []
    for piece in text.split():
        i, j = 0, len(piece)
        while i < j and not piece[i].isalnum():
            i += 1
        while j > i and not piece[j - 1].isalnum():
            j -= 1
        if i < j:
            words.append(piece[i:j].lower())
    return tuple(words)


@dataclass(frozen=True)
class Token:
    """One token of a sentence.

    ``span`` indexes into the owning sentence's text; ``surface`` is that
    slice. ``normalized`` is the case-folded surface with surrounding
    punctuation stripped. ``is_entity_merge`` marks tokens produced by
    proper-noun merging, whose surface then spans several original words.
    """

    surface: str
    normalized: str
    is_entity_merge: bool
    span: tuple[int, int]

    @property
    def words(self) -> tuple[str, ...]:
        return norm_words(self.surface)


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[Token, ...]

    @property
    def words(self) -> tuple[str, ...]:
        """Flat normalized word stream, entity merges expanded."""
        return tuple(w for tok in self.tokens for w in tok.words)


@dataclass(frozen=True)
class Document:
    raw_text: str
    sentences: tuple[Sentence, ...]


def _abbrev_protected(text: str, i: int, abbrevs: frozenset[str]) -> bool:
    # Word chunk ending at the period, leading punctuation dropped:
    # "(e.g." -> "e.g.". Protected when it is a (partial) dotted form of
    # a known abbreviation, so both periods of "e.g." stay inside.
    a = i
    while a > 0 and not text[a - 1].isspace():
        a -= 1
    while a < i and not (text[a].isalnum() or text[a] == "."):
        a += 1
    chunk = text[a : i + 1].lower()
    if not chunk or chunk == ".":
        return False
    return any((entry + ".").startswith(chunk) for entry in abbrevs)


def _period_protected(text: str, i: int, abbrevs: frozenset[str]) -> bool:
    before = text[i - 1] if i > 0 else ""
    after = text[i + 1] if i + 1 < len(text) else ""
    if before.isdigit() and after.isdigit():
        return True  # decimal number
    if before.isalpha() and before.isupper():
        two_back = text[i - 2] if i > 1 else ""
        if not two_back.isalnum():
            return True  # single-letter initial
    return _abbrev_protected(text, i, abbrevs)


def split_sentences(raw_text: str, abbreviations: frozenset[str] | None = None) -> list[str]:
    """Split raw text into sentence strings.

    ``.``, ``!`` and ``?`` end a sentence, except for protected periods
    (abbreviations, single-letter initials, decimals). A run of terminal
    punctuation is absorbed into the sentence it ends. Trailing text with
    no terminator becomes the final sentence. Returns stripped strings;
    empty/whitespace-only input yields [].
    """
    abbrevs = abbreviations if abbreviations is not None else lexicon.abbreviations()
    sentences: list[str] = []
    n = len(raw_text)
    start = 0
    i = 0
    while i < n:
        ch = raw_text[i]
        if ch in _TERMINAL and not (ch == "." and _period_protected(raw_text, i, abbrevs)):
            end = i
            while end + 1 < n and raw_text[end + 1] in _TERMINAL:
                end += 1
            piece = raw_text[start : end + 1].strip()
            if piece:
                sentences.append(piece)
            start = end + 1
            i = end + 1
            continue
        i += 1
    tail = raw_text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize(sentence_text: str) -> list[Token]:
    """Whitespace tokens with surrounding punctuation stripped.

    Words that are pure punctuation produce no token. Internal hyphens and
    apostrophes are kept. Spans point at the stripped surface inside
    ``sentence_text``.
    """
    tokens: list[Token] = []
    for m in _WORD_RE.finditer(sentence_text):
        s, e = m.span()
        while s < e and not sentence_text[s].isalnum():
            s += 1
        while e > s and not sentence_text[e - 1].isalnum():
            e -= 1
        if s == e:
            continue
        surface = sentence_text[s:e]
        tokens.append(Token(surface, surface.lower(), False, (s, e)))
    return tokens


def _strip_norm(surface: str) -> str:
    i, j = 0, len(surface)
    while i < j and not surface[i].isalnum():
        i += 1
    while j > i and not surface[j - 1].isalnum():
        j -= 1
    return surface[i:j].lower()


def _capitalized(tok: Token) -> bool:
    return bool(tok.surface) and tok.surface[0].isupper()


def merge_proper_nouns(
    tokens: list[Token],
    stopwords: frozenset[str] | None = None,
    text: str | None = None,
) -> list[Token]:
    """Merge runs of >= 2 consecutive capitalized non-stopword tokens.

    The merged token's surface is the original text slice between the
    run's first and last token when ``text`` is given (preserving inner
    punctuation, "J. K. Rowling"), otherwise the surfaces joined with
    single spaces. Idempotent: merged tokens never merge again because a
    single pass leaves no adjacent capitalized non-stopword pairs.
    """
    sw = stopwords if stopwords is not None else lexicon.stopwords()
    out: list[Token] = []
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if _capitalized(tok) and tok.normalized not in sw:
            j = i + 1
            while j < n and _capitalized(tokens[j]) and tokens[j].normalized not in sw:
                j += 1
            if j - i >= 2:
                span = (tok.span[0], tokens[j - 1].span[1])
                if text is not None:
                    surface = text[span[0] : span[1]]
                else:
                    surface = " ".join(t.surface for t in tokens[i:j])
                out.append(Token(surface, _strip_norm(surface), True, span))
                i = j
                continue
        out.append(tok)
        i += 1
    return out


def preprocess(
    raw_text: str,
    abbreviations: frozenset[str] | None = None,
    stopwords: frozenset[str] | None = None,
) -> Document:
    """Split, tokenize, and merge into a Document.

    Sentence fragments that yield no tokens (stray punctuation) are glued
    onto a neighboring sentence so every retained sentence has at least
    one token and no non-whitespace character is lost.
    """
    pieces = split_sentences(raw_text, abbreviations)
    texts: list[str] = []
    pending = ""
    for piece in pieces:
        combined = f"{pending} {piece}".strip() if pending else piece
        if tokenize(combined):
            texts.append(combined)
            pending = ""
        else:
            pending = combined
    if pending and texts:
        texts[-1] = f"{texts[-1]} {pending}"
    sentences = tuple(
        Sentence(i, t, tuple(merge_proper_nouns(tokenize(t), stopwords, text=t)))
        for i, t in enumerate(texts)
    )
    return Document(raw_text, sentences)
