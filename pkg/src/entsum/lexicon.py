"""Bundled word lists and verb-form detection.

Four lists ship with the package: stopwords, verb lemmas, sentence-safe
abbreviations, and resolvable pronouns. Each can be replaced by a user file
in the same format (one entry per line, ``#`` comments and blank lines
ignored).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path


def parse_wordlist(text: str) -> frozenset[str]:
    """Parse list file content: one lowercased entry per line, # comments."""
    entries = set()
    for line in text.splitlines():
        word = line.strip()
        if word and not word.startswith("#"):
            entries.add(word.lower())
    return frozenset(entries)


def load_wordlist(path: str | Path) -> frozenset[str]:
    return parse_wordlist(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def _bundled(name: str) -> frozenset[str]:
    text = resources.files("entsum.data").joinpath(name).read_text(encoding="utf-8")
    return parse_wordlist(text)


def stopwords(path: str | Path | None = None) -> frozenset[str]:
    return load_wordlist(path) if path else _bundled("stopwords.txt")


def verbs(path: str | Path | None = None) -> frozenset[str]:
    return load_wordlist(path) if path else _bundled("verbs.txt")


def abbreviations(path: str | Path | None = None) -> frozenset[str]:
    return load_wordlist(path) if path else _bundled("abbreviations.txt")


def pronouns(path: str | Path | None = None) -> frozenset[str]:
    return load_wordlist(path) if path else _bundled("pronouns.txt")


def is_verb(word: str, lexicon: frozenset[str]) -> bool:
    """True if ``word`` is a lexicon verb or an inflected form of one.

    Inflections are recognized by stripping -s/-es/-ies, -ed/-d/-ied and
    -ing (with consonant-doubling and silent-e restoration) and checking
    the stripped stem against the lexicon. Multiword strings are never
    verbs.
    """
    w = word.lower()
    if not w or " " in w:
        return False
    if w in lexicon:
        return True
    n = len(w)
    stems: list[str] = []
    if w.endswith("ies") and n > 4:
        stems.append(w[:-3] + "y")
    if w.endswith("es") and n > 3:
        stems.append(w[:-2])
    if w.endswith("s") and n > 2 and not w.endswith("ss"):
        stems.append(w[:-1])
    if w.endswith("ied") and n > 4:
        stems.append(w[:-3] + "y")
    if w.endswith("ed") and n > 3:
        stems.append(w[:-2])
        stems.append(w[:-1])
        if n > 4 and w[-3] == w[-4]:
            stems.append(w[:-3])
    if w.endswith("ing") and n > 4:
        stems.append(w[:-3])
        stems.append(w[:-3] + "e")
        if n > 5 and w[-4] == w[-5]:
            stems.append(w[:-4])
    return any(s in lexicon for s in stems)


@dataclass(frozen=True)
class Lexicons:
    """The word lists one pipeline run operates with."""

    stopwords: frozenset[str]
    verbs: frozenset[str]
    pronouns: frozenset[str]
    abbreviations: frozenset[str]

    @classmethod
    def bundled(
        cls,
        stopwords_path: str | Path | None = None,
        verbs_path: str | Path | None = None,
        pronouns_path: str | Path | None = None,
        abbreviations_path: str | Path | None = None,
    ) -> "Lexicons":
        """Bundled defaults, with any list replaced by a user file."""
        return cls(
            stopwords=stopwords(stopwords_path),
            verbs=verbs(verbs_path),
            pronouns=pronouns(pronouns_path),
            abbreviations=abbreviations(abbreviations_path),
        )
