"""Subject-action-object triples: extraction, ingestion, cleanup, anaphora.

The built-in extractor is a shallow clause scanner, not a parser: it cuts
each sentence into clauses, finds the first verb group, and reads the
content-token runs on both sides as subject and object. Externally
produced triples can be ingested from a JSON-lines file instead and flow
through the same cleanup and resolution steps.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from . import lexicon
from .preprocess import Document, Sentence, Token, norm_words

# Conjunctions that start a new clause. "for", "yet" and "so" are left out:
# they are far more common as preposition/adverb and splitting on them
# destroys more triples than it saves.
_COORDINATORS = frozenset({"and", "but", "or", "nor"})


@dataclass(frozen=True)
class Triple:
    subject: str
    action: str
    object: str
    sentence_index: int
    provenance: str = "heuristic"
    resolved: bool = False


class TripleFileError(ValueError):
    """A triples file line failed validation."""


def _is_content(tok: Token, stopwords: frozenset[str], pronouns: frozenset[str]) -> bool:
    # Pronouns count as content even though they are stopwords: they can
    # head a subject or object and get resolved later.
    return tok.normalized not in stopwords or tok.normalized in pronouns


def _is_verb_token(tok: Token, verbs: frozenset[str]) -> bool:
    return not tok.is_entity_merge and lexicon.is_verb(tok.normalized, verbs)


def _split_clauses(sentence: Sentence) -> list[list[Token]]:
    clauses: list[list[Token]] = []
    current: list[Token] = []
    prev_end: int | None = None
    for tok in sentence.tokens:
        if prev_end is not None:
            gap = sentence.text[prev_end : tok.span[0]]
            if "," in gap or ";" in gap:
                if current:
                    clauses.append(current)
                current = []
        prev_end = tok.span[1]
        if not tok.is_entity_merge and tok.normalized in _COORDINATORS:
            if current:
                clauses.append(current)
            current = []
            continue
        current.append(tok)
    if current:
        clauses.append(current)
    return clauses


def extract_triples_heuristic(
    sentence: Sentence,
    verbs: frozenset[str],
    stopwords: frozenset[str],
    pronouns: frozenset[str],
) -> list[Triple]:
    """At most one (subject, action, object) per clause.

    Clauses split at commas, semicolons, and coordinating conjunctions.
    Within a clause the action is the first verb group preceded by at
    least one content token; the subject is the content-token run ending
    right before it, the object the first content-token run after it.
    A clause missing any of the three parts yields nothing.
    """
    triples: list[Triple] = []
    for clause in _split_clauses(sentence):
        action_start = None
        seen_content = False
        for i, tok in enumerate(clause):
            if _is_verb_token(tok, verbs):
                if seen_content:
                    action_start = i
                    break
            if _is_content(tok, stopwords, pronouns):
                seen_content = True
        if action_start is None:
            continue
        action_end = action_start
        while action_end + 1 < len(clause) and _is_verb_token(clause[action_end + 1], verbs):
            action_end += 1

        subj_start = action_start
        while subj_start > 0 and _is_content(clause[subj_start - 1], stopwords, pronouns):
            subj_start -= 1
        subject_toks = clause[subj_start:action_start]
        if not subject_toks:
            continue

        q = action_end + 1
        while q < len(clause) and not _is_content(clause[q], stopwords, pronouns):
            q += 1
        obj_start = q
        while q < len(clause) and _is_content(clause[q], stopwords, pronouns):
            q += 1
        object_toks = clause[obj_start:q]
        if not object_toks:
            continue

        triples.append(
            Triple(
                subject=" ".join(t.surface for t in subject_toks),
                action=" ".join(t.surface for t in clause[action_start : action_end + 1]),
                object=" ".join(t.surface for t in object_toks),
                sentence_index=sentence.index,
            )
        )
    return triples


def ingest_triples(path: str | Path, document: Document) -> list[Triple]:
    """Read triples from a JSON-lines file.

    Each data line must be an object with exactly the keys ``s``, ``a``,
    ``o`` (non-empty strings) and ``i`` (sentence index into ``document``).
    Lines starting with ``#`` and blank lines are skipped. Any malformed
    line raises TripleFileError naming the line number and field.
    """
    triples: list[Triple] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            record = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise TripleFileError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        if not isinstance(record, dict):
            raise TripleFileError(f"line {lineno}: expected an object")
        if set(record) != {"s", "a", "o", "i"}:
            raise TripleFileError(
                f"line {lineno}: expected exactly keys s, a, o, i; got {sorted(record)}"
            )
        for field in ("s", "a", "o"):
            value = record[field]
            if not isinstance(value, str) or not value.strip():
                raise TripleFileError(f"line {lineno}: field {field!r} must be a non-empty string")
        index = record["i"]
        if isinstance(index, bool) or not isinstance(index, int) or index < 0:
            raise TripleFileError(f"line {lineno}: field 'i' must be a non-negative integer")
        if index >= len(document.sentences):
            raise TripleFileError(
                f"line {lineno}: sentence index {index} out of range "
                f"(document has {len(document.sentences)} sentences)"
            )
        triples.append(
            Triple(record["s"], record["a"], record["o"], index, provenance="ingested")
        )
    return triples


def _contains(outer: tuple[str, ...], inner: tuple[str, ...]) -> bool:
    """True if ``inner`` occurs as a contiguous run inside ``outer``."""
    if not inner or len(inner) > len(outer):
        return False
    return any(outer[i : i + len(inner)] == inner for i in range(len(outer) - len(inner) + 1))


def cleanup_triples(raw: list[Triple]) -> list[Triple]:
    """Deduplicate and prune per sentence; idempotent, never grows.

    Per sentence, in order: exact normalized duplicates collapse to the
    first; among triples sharing subject and action only the longest
    object survives (ties keep the earliest); a triple whose subject,
    action, and object are all contained in another survivor is dropped.
    """
    ordered = sorted(enumerate(raw), key=lambda item: (item[1].sentence_index, item[0]))
    by_sentence: dict[int, list[Triple]] = {}
    for _, t in ordered:
        by_sentence.setdefault(t.sentence_index, []).append(t)

    result: list[Triple] = []
    for si in sorted(by_sentence):
        norm = {
            id(t): (norm_words(t.subject), norm_words(t.action), norm_words(t.object))
            for t in by_sentence[si]
        }
        stage1: list[Triple] = []
        seen: set[tuple] = set()
        for t in by_sentence[si]:
            key = norm[id(t)]
            if key not in seen:
                seen.add(key)
                stage1.append(t)

        best: dict[tuple, Triple] = {}
        for t in stage1:
            s, a, o = norm[id(t)]
            prev = best.get((s, a))
            if prev is None or len(o) > len(norm[id(prev)][2]):
                best[(s, a)] = t
        stage2 = [t for t in stage1 if best[norm[id(t)][0], norm[id(t)][1]] is t]

        for t in stage2:
            ts, ta, to = norm[id(t)]
            dominated = any(
                u is not t
                and _contains(norm[id(u)][0], ts)
                and _contains(norm[id(u)][1], ta)
                and _contains(norm[id(u)][2], to)
                for u in stage2
            )
            if not dominated:
                result.append(t)
    return result


def resolve_anaphora(
    triples: list[Triple],
    document: Document,
    pronouns: frozenset[str] | None = None,
) -> list[Triple]:
    """Replace pronoun subjects with the nearest preceding noun subject.

    A subject that is (case-insensitively) a pronoun is rewritten to the
    most recent non-pronoun subject of the nearest preceding sentence
    that has one, including subjects that were themselves just resolved.
    Objects are never touched. Order-dependent: runs over sentences
    front to back.
    """
    pron = pronouns if pronouns is not None else lexicon.pronouns()
    ordered = sorted(enumerate(triples), key=lambda item: (item[1].sentence_index, item[0]))
    noun_subject: dict[int, str] = {}
    resolved_by_position: dict[int, Triple] = {}
    for position, t in ordered:
        if t.subject.lower() in pron:
            replacement = None
            for si in range(t.sentence_index - 1, -1, -1):
                if si in noun_subject:
                    replacement = noun_subject[si]
                    break
            if replacement is not None:
                t = replace(t, subject=replacement, resolved=True)
        if t.subject.lower() not in pron:
            noun_subject[t.sentence_index] = t.subject
        resolved_by_position[position] = t
    return [resolved_by_position[i] for i in range(len(triples))]
