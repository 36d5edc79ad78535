"""Extractive summarization via keyword statistics and entity graphs.

The pipeline scores keywords by co-occurrence degree over frequency,
extracts subject-action-object triples, keeps the triples whose subjects
line up with scored keyphrases, builds a directed entity graph from them,
and ranks sentences by the graph connectivity of the entities they
mention. A stopword-free unigram overlap metric and a corpus harness
close the loop for evaluation.
"""
from .graph import EntityGraph, build_graph, filter_subjects, top_connected_nodes
from .harness import (
    Aggregate,
    CorpusEntry,
    CorpusError,
    EvalRow,
    aggregate,
    load_corpus,
    run_sweep,
)
from .keywords import (
    Keyphrase,
    KeywordStats,
    compute_keyword_stats,
    extract_candidates,
    score_keyphrases,
)
from .lexicon import Lexicons, is_verb, load_wordlist
from .preprocess import (
    Document,
    Sentence,
    Token,
    merge_proper_nouns,
    norm_words,
    preprocess,
    split_sentences,
    tokenize,
)
from .rouge import RougeReport, rouge1, weighted_average
from .summarizer import (
    Analysis,
    ScoredSentence,
    SummaryConfig,
    SummaryResult,
    Variant,
    WinnowResult,
    analyze,
    normalize_scores,
    render_summary,
    select_by_word_budget,
    select_summary,
    sentence_scores_connectivity,
    sentence_scores_keyphrases,
    sentence_scores_ks,
    summarize,
    summarize_text,
    winnow,
)
from .triples import (
    Triple,
    TripleFileError,
    cleanup_triples,
    extract_triples_heuristic,
    ingest_triples,
    resolve_anaphora,
)

__version__ = "0.1.0"

__all__ = [
    "Aggregate",
    "Analysis",
    "CorpusEntry",
    "CorpusError",
    "Document",
    "EntityGraph",
    "EvalRow",
    "Keyphrase",
    "KeywordStats",
    "Lexicons",
    "RougeReport",
    "ScoredSentence",
    "Sentence",
    "SummaryConfig",
    "SummaryResult",
    "Token",
    "Triple",
    "TripleFileError",
    "Variant",
    "WinnowResult",
    "aggregate",
    "analyze",
    "build_graph",
    "cleanup_triples",
    "compute_keyword_stats",
    "extract_candidates",
    "extract_triples_heuristic",
    "filter_subjects",
    "ingest_triples",
    "is_verb",
    "load_corpus",
    "load_wordlist",
    "merge_proper_nouns",
    "norm_words",
    "normalize_scores",
    "preprocess",
    "render_summary",
    "resolve_anaphora",
    "rouge1",
    "run_sweep",
    "score_keyphrases",
    "select_by_word_budget",
    "select_summary",
    "sentence_scores_connectivity",
    "sentence_scores_keyphrases",
    "sentence_scores_ks",
    "split_sentences",
    "summarize",
    "summarize_text",
    "tokenize",
    "top_connected_nodes",
    "weighted_average",
    "winnow",
]
