"""Sentence scoring, winnowing, and summary selection.

Three variants share one pipeline (keywords -> triples -> entity graph):

* ``nw``    scores each sentence by the summed connectivity of the graph
            nodes it mentions;
* ``nw-ks`` multiplies each node's connectivity by its best matching
            keyphrase score before summing;
* ``w``     first winnows the document to the sentences mentioning the
            top connected nodes, then reruns the whole pipeline on that
            intermediate document and scores it like ``nw``.

Scores stay exact (ints and fractions) unless length normalization is
switched on, so repeated runs are byte-identical.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

from . import keywords as kw_mod
from . import triples as tr_mod
from .graph import EntityGraph, build_graph, filter_subjects, sequences_match, top_connected_nodes
from .keywords import Keyphrase
from .lexicon import Lexicons
from .preprocess import Document, Sentence, preprocess
from .triples import Triple

log = logging.getLogger(__name__)

Score = Union[int, Fraction, float]

NORMALIZERS = ("none", "identity", "sqrt", "log")


class Variant(str, Enum):
    W = "w"
    NW = "nw"
    NW_KS = "nw-ks"


@dataclass(frozen=True)
class SummaryConfig:
    variant: Variant = Variant.NW
    ratio: float = 0.15
    winnow_top_k: int = 3
    winnow_target: tuple[float, float] = (0.60, 0.70)
    normalize: str = "none"

    def __post_init__(self) -> None:
        if not 0 < self.ratio <= 1:
            raise ValueError(f"ratio must be in (0, 1], got {self.ratio}")
        if self.winnow_top_k not in (3, 4):
            raise ValueError(f"winnow_top_k must be 3 or 4, got {self.winnow_top_k}")
        if self.normalize not in NORMALIZERS:
            raise ValueError(f"normalize must be one of {NORMALIZERS}, got {self.normalize!r}")


@dataclass(frozen=True)
class ScoredSentence:
    sentence_index: int
    raw_score: Score
    rank: int


@dataclass(frozen=True)
class SummaryResult:
    selected: tuple[int, ...]
    scores: tuple[ScoredSentence, ...]
    config: SummaryConfig
    intermediate_size: int | None = None


def _ranked(pairs: list[tuple[int, Score]]) -> tuple[ScoredSentence, ...]:
    # Rank 0 is the best sentence; ties go to the smaller index.
    order = sorted(range(len(pairs)), key=lambda i: (-pairs[i][1], pairs[i][0]))
    rank_of = {pairs[i][0]: r for r, i in enumerate(order)}
    return tuple(ScoredSentence(idx, score, rank_of[idx]) for idx, score in pairs)


def _node_sequences(graph: EntityGraph) -> list[tuple[str, tuple[str, ...]]]:
    return [(node, tuple(node.split())) for node in graph.nodes]


def _sentence_mentions(sentence: Sentence, seq: tuple[str, ...]) -> bool:
    return tr_mod._contains(sentence.words, seq)


def sentence_scores_connectivity(document: Document, graph: EntityGraph) -> list[ScoredSentence]:
    """Sentence score = sum of connectivity over nodes the sentence mentions.

    A node is mentioned when its word sequence occurs contiguously in the
    sentence's normalized word stream; each node counts once per sentence.
    """
    node_seqs = _node_sequences(graph)
    pairs: list[tuple[int, Score]] = []
    for sent in document.sentences:
        score = sum(
            graph.connectivity[i]
            for i, (_, seq) in enumerate(node_seqs)
            if _sentence_mentions(sent, seq)
        )
        pairs.append((sent.index, score))
    return list(_ranked(pairs))


def node_keyphrase_score(node_words: tuple[str, ...], keyphrases: list[Keyphrase]) -> Fraction:
    """Score of the node's best matching keyphrase.

    Exact word-sequence matches win over containment matches; within the
    same match kind the highest keyphrase score is taken. No match
    scores 0.
    """
    exact = [kp.score for kp in keyphrases if kp.flat_words == node_words]
    if exact:
        return max(exact)
    contained = [kp.score for kp in keyphrases if sequences_match(node_words, kp.flat_words)]
    if contained:
        return max(contained)
    return Fraction(0)


def sentence_scores_ks(
    document: Document,
    graph: EntityGraph,
    keyphrases: list[Keyphrase],
) -> list[ScoredSentence]:
    """Like connectivity scoring, but each node is weighted by its
    best matching keyphrase score before summing."""
    node_seqs = _node_sequences(graph)
    finals = [
        graph.connectivity[i] * node_keyphrase_score(seq, keyphrases)
        for i, (_, seq) in enumerate(node_seqs)
    ]
    pairs: list[tuple[int, Score]] = []
    for sent in document.sentences:
        score = sum(
            (finals[i] for i, (_, seq) in enumerate(node_seqs) if _sentence_mentions(sent, seq)),
            Fraction(0),
        )
        pairs.append((sent.index, score))
    return list(_ranked(pairs))


def sentence_scores_keyphrases(
    document: Document,
    keyphrases: list[Keyphrase],
) -> list[ScoredSentence]:
    """Fallback scoring when the graph is empty: per sentence, the sum of
    keyphrase scores over that sentence's candidate occurrences."""
    totals: dict[int, Fraction] = {s.index: Fraction(0) for s in document.sentences}
    for kp in keyphrases:
        for si, _span in kp.sentence_occurrences:
            totals[si] += kp.score
    pairs: list[tuple[int, Score]] = [(s.index, totals[s.index]) for s in document.sentences]
    return list(_ranked(pairs))


def normalize_scores(
    scores: Sequence[ScoredSentence],
    document: Document,
    selector: str,
) -> list[ScoredSentence]:
    """Divide raw scores by f(sentence token count).

    ``identity`` divides by L, ``sqrt`` by sqrt(L), ``log`` by ln(L + 1);
    ``none`` returns the input unchanged. Zero-score and zero-length
    sentences stay at 0. Ranks are recomputed.
    """
    if selector == "none":
        return list(scores)
    if selector not in NORMALIZERS:
        raise ValueError(f"unknown normalizer {selector!r}")
    lengths = {s.index: len(s.tokens) for s in document.sentences}
    pairs: list[tuple[int, Score]] = []
    for sc in scores:
        length = lengths[sc.sentence_index]
        if length == 0 or sc.raw_score == 0:
            pairs.append((sc.sentence_index, 0.0))
            continue
        if selector == "identity":
            divisor: Score = length
        elif selector == "sqrt":
            divisor = math.sqrt(length)
        else:
            divisor = math.log(length + 1)
        pairs.append((sc.sentence_index, sc.raw_score / divisor))
    return list(_ranked(pairs))


def _target_count(ratio: float, n: int) -> int:
    if n == 0:
        return 0
    # floor() on the decimal the caller wrote, not on binary float error:
    # 0.15 * 20 must select 3 sentences, not 2.
    return max(1, math.floor(Fraction(str(ratio)) * n))


def select_summary(
    scores: Sequence[ScoredSentence],
    document: Document,
    ratio: float,
    config: SummaryConfig | None = None,
    target_count: int | None = None,
    intermediate_size: int | None = None,
) -> SummaryResult:
    """Pick the top-ranked sentences and emit them in document order."""
    cfg = config if config is not None else SummaryConfig(ratio=ratio)
    if not document.sentences:
        return SummaryResult((), tuple(scores), cfg, intermediate_size)
    count = target_count if target_count is not None else _target_count(ratio, len(document.sentences))
    count = min(count, len(scores))
    chosen = sorted(sorted(scores, key=lambda s: s.rank)[:count], key=lambda s: s.sentence_index)
    return SummaryResult(
        selected=tuple(s.sentence_index for s in chosen),
        scores=tuple(scores),
        config=cfg,
        intermediate_size=intermediate_size,
    )


def select_by_word_budget(
    scores: Sequence[ScoredSentence],
    document: Document,
    budget: int,
    config: SummaryConfig | None = None,
    intermediate_size: int | None = None,
) -> SummaryResult:
    """Greedy rank-order selection while the running token count fits.

    Walks sentences best rank first and stops at the first one that would
    push the total past ``budget``; if even the top sentence is over
    budget it is taken alone so the summary is never empty.
    """
    if budget < 1:
        raise ValueError("word budget must be >= 1")
    cfg = config if config is not None else SummaryConfig()
    lengths = {s.index: len(s.tokens) for s in document.sentences}
    chosen: list[ScoredSentence] = []
    used = 0
    for sc in sorted(scores, key=lambda s: s.rank):
        need = lengths[sc.sentence_index]
        if chosen and used + need > budget:
            break
        chosen.append(sc)
        used += need
        if used >= budget:
            break
    chosen.sort(key=lambda s: s.sentence_index)
    return SummaryResult(
        selected=tuple(s.sentence_index for s in chosen),
        scores=tuple(scores),
        config=cfg,
        intermediate_size=intermediate_size,
    )


@dataclass(frozen=True)
class WinnowResult:
    document: Document
    original_indices: tuple[int, ...]
    used_k: int | None
    fell_back: bool


@dataclass(frozen=True)
class Analysis:
    """Everything one pipeline pass derives from a document."""

    candidates: list[list[kw_mod.Segment]]
    stats: dict[str, kw_mod.KeywordStats]
    keyphrases: list[Keyphrase]
    resolved: list[Triple]
    filtered: list[Triple]
    graph: EntityGraph


def analyze(
    document: Document,
    lexicons: Lexicons | None = None,
    external_triples: list[Triple] | None = None,
) -> Analysis:
    """Run keywords + triples + graph over a document."""
    lex = lexicons if lexicons is not None else Lexicons.bundled()
    candidates = [
        kw_mod.extract_candidates(s, lex.stopwords, lex.verbs) for s in document.sentences
    ]
    stats = kw_mod.compute_keyword_stats(candidates)
    keyphrases = kw_mod.score_keyphrases(stats, candidates)
    if external_triples is None:
        raw = [
            t
            for s in document.sentences
            for t in tr_mod.extract_triples_heuristic(s, lex.verbs, lex.stopwords, lex.pronouns)
        ]
    else:
        raw = list(external_triples)
    cleaned = tr_mod.cleanup_triples(raw)
    resolved = tr_mod.resolve_anaphora(cleaned, document, lex.pronouns)
    filtered = filter_subjects(resolved, keyphrases)
    return Analysis(candidates, stats, keyphrases, resolved, filtered, build_graph(filtered))


def winnow(document: Document, graph: EntityGraph, config: SummaryConfig) -> WinnowResult:
    """Reduce the document to sentences mentioning the top connected nodes.

    Tries k = winnow_top_k first; if the kept fraction falls short of the
    winnow_target lower bound, retries with k = 4. An empty selection
    falls back to the original document.
    """
    n = len(document.sentences)
    identity = tuple(range(n))
    if n == 0 or not graph.nodes:
        return WinnowResult(document, identity, None, True)

    lower = config.winnow_target[0]
    ks = (4,) if config.winnow_top_k == 4 else (3, 4)
    kept: list[int] = []
    used_k = None
    for k in ks:
        top = top_connected_nodes(graph, min(k, len(graph.nodes)))
        seqs = [tuple(node.split()) for node in top]
        kept = [
            s.index
            for s in document.sentences
            if any(_sentence_mentions(s, seq) for seq in seqs)
        ]
        used_k = k
        if len(kept) / n >= lower:
            break
    if not kept:
        log.warning("winnowing kept no sentences; falling back to the full document")
        return WinnowResult(document, identity, None, True)

    sentences = tuple(
        replace(document.sentences[orig], index=new) for new, orig in enumerate(kept)
    )
    intermediate = Document(
        raw_text=" ".join(s.text for s in sentences),
        sentences=sentences,
    )
    return WinnowResult(intermediate, tuple(kept), used_k, False)


def _remap_external(triples: list[Triple], kept: tuple[int, ...]) -> list[Triple]:
    new_index = {orig: new for new, orig in enumerate(kept)}
    return [
        replace(t, sentence_index=new_index[t.sentence_index])
        for t in triples
        if t.sentence_index in new_index
    ]


def _score_stage(document: Document, analysis: Analysis, config: SummaryConfig) -> list[ScoredSentence]:
    if not analysis.filtered:
        log.warning("no triples survived keyphrase filtering; scoring by keyphrases only")
        scores = sentence_scores_keyphrases(document, analysis.keyphrases)
    elif config.variant is Variant.NW_KS:
        scores = sentence_scores_ks(document, analysis.graph, analysis.keyphrases)
    else:
        scores = sentence_scores_connectivity(document, analysis.graph)
    return normalize_scores(scores, document, config.normalize)


def summarize(
    document: Document,
    config: SummaryConfig | None = None,
    lexicons: Lexicons | None = None,
    external_triples: list[Triple] | None = None,
) -> SummaryResult:
    """Produce a summary of ``document`` under ``config``.

    ``external_triples`` replaces the built-in extractor's output (it
    still goes through cleanup, resolution, and filtering). The winnowing
    variant reselects against the original sentence count, so summary
    size contracts hold for every variant.
    """
    cfg = config if config is not None else SummaryConfig()
    if not document.sentences:
        return SummaryResult((), (), cfg, None)

    base = analyze(document, lexicons, external_triples)

    if cfg.variant is not Variant.W:
        scores = _score_stage(document, base, cfg)
        return select_summary(scores, document, cfg.ratio, cfg)

    target = _target_count(cfg.ratio, len(document.sentences))
    win = winnow(document, base.graph, cfg)
    if not win.fell_back and len(win.document.sentences) < target:
        log.warning(
            "winnowed document has %d sentences but the summary needs %d; "
            "falling back to the full document",
            len(win.document.sentences),
            target,
        )
        win = WinnowResult(document, tuple(range(len(document.sentences))), None, True)

    if win.fell_back:
        scores = _score_stage(document, base, cfg)
        return select_summary(scores, document, cfg.ratio, cfg,
                              intermediate_size=len(document.sentences))

    inner_external = (
        _remap_external(external_triples, win.original_indices)
        if external_triples is not None
        else None
    )
    inner = analyze(win.document, lexicons, inner_external)
    scores = _score_stage(win.document, inner, cfg)
    picked = select_summary(scores, win.document, cfg.ratio, cfg, target_count=target)
    back = win.original_indices
    return SummaryResult(
        selected=tuple(sorted(back[i] for i in picked.selected)),
        scores=tuple(
            ScoredSentence(back[s.sentence_index], s.raw_score, s.rank) for s in picked.scores
        ),
        config=cfg,
        intermediate_size=len(win.document.sentences),
    )


def summarize_text(
    raw_text: str,
    config: SummaryConfig | None = None,
    lexicons: Lexicons | None = None,
    external_triples: list[Triple] | None = None,
) -> tuple[Document, SummaryResult]:
    """Preprocess raw text and summarize it; returns (document, result)."""
    lex = lexicons if lexicons is not None else Lexicons.bundled()
    document = preprocess(raw_text, lex.abbreviations, lex.stopwords)
    return document, summarize(document, config, lex, external_triples)


def render_summary(document: Document, result: SummaryResult) -> str:
    """Selected sentences in document order, newline separated."""
    return "\n".join(document.sentences[i].text for i in result.selected)
