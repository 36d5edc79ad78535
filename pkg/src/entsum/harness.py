"""Corpus evaluation harness.

A corpus is a directory with ``docs/*.txt`` and ``refs/*.txt`` where
matching filenames pair a document with its reference summary. The sweep
summarizes every document under every (variant, ratio) combination plus a
lead baseline, scores each summary with stopword-free unigram overlap, and
aggregates means and standard deviations.
"""
from __future__ import annotations

import logging
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .lexicon import Lexicons
from .preprocess import Document, preprocess
from .rouge import RougeReport, rouge1
from .summarizer import (
    SummaryConfig,
    Variant,
    _target_count,
    render_summary,
    summarize,
)

log = logging.getLogger(__name__)

LEAD = "lead"
DEFAULT_RATIOS = (0.10, 0.15, 0.20)
DEFAULT_VARIANTS = (Variant.W, Variant.NW, Variant.NW_KS)


class CorpusError(Exception):
    """The corpus directory is missing or unusable."""


@dataclass(frozen=True)
class CorpusEntry:
    doc_id: str
    document_path: Path
    reference_path: Path


@dataclass(frozen=True)
class EvalRow:
    doc_id: str
    variant: str
    ratio: float
    report: RougeReport | None
    error: str | None = None


@dataclass(frozen=True)
class Aggregate:
    variant: str
    ratio: float
    n_docs: int
    mean_recall: float
    mean_precision: float
    mean_f: float
    sd_recall: float
    sd_precision: float
    sd_f: float


def load_corpus(root: str | Path) -> list[CorpusEntry]:
    """Pair docs/*.txt with refs/*.txt by filename, sorted by doc id.

    Raises CorpusError when the layout is missing or docs/ has no .txt
    files; documents without a matching reference are skipped with a
    warning.
    """
    root = Path(root)
    docs_dir = root / "docs"
    refs_dir = root / "refs"
    if not docs_dir.is_dir():
        raise CorpusError(f"corpus root {root} has no docs/ directory")
    doc_paths = sorted(docs_dir.glob("*.txt"))
    if not doc_paths:
        raise CorpusError(f"{docs_dir} contains no .txt documents")
    entries = []
    for doc_path in doc_paths:
        ref_path = refs_dir / doc_path.name
        if not ref_path.is_file():
            log.warning("skipping %s: no reference %s", doc_path.name, ref_path)
            continue
        entries.append(CorpusEntry(doc_path.stem, doc_path, ref_path))
    return entries


def _lead_summary(document: Document, ratio: float) -> str:
    count = _target_count(ratio, len(document.sentences))
    return "\n".join(s.text for s in document.sentences[:count])


def run_sweep(
    corpus: Sequence[CorpusEntry],
    variants: Sequence[Variant] = DEFAULT_VARIANTS,
    ratios: Sequence[float] = DEFAULT_RATIOS,
    lexicons: Lexicons | None = None,
    include_lead: bool = True,
) -> list[EvalRow]:
    """Evaluate every document under every variant and ratio.

    Per-document failures never abort the sweep; they surface as rows
    with ``error`` set and no report. Row order is doc id, then variant
    (lead last), then ratio, independent of the input ordering.
    """
    lex = lexicons if lexicons is not None else Lexicons.bundled()
    names = [v.value for v in variants] + ([LEAD] if include_lead else [])
    rows: list[EvalRow] = []
    for entry in sorted(corpus, key=lambda e: e.doc_id):
        try:
            text = entry.document_path.read_text(encoding="utf-8")
            reference = entry.reference_path.read_text(encoding="utf-8")
            document = preprocess(text, lex.abbreviations, lex.stopwords)
        except Exception as exc:  # noqa: BLE001 - any per-doc failure becomes a row
            rows.extend(
                EvalRow(entry.doc_id, name, ratio, None, error=str(exc))
                for name in names
                for ratio in ratios
            )
            continue
        for name in names:
            for ratio in ratios:
                try:
                    if name == LEAD:
                        summary = _lead_summary(document, ratio)
                    else:
                        cfg = SummaryConfig(variant=Variant(name), ratio=ratio)
                        summary = render_summary(document, summarize(document, cfg, lex))
                    report = rouge1(summary, reference, lex.stopwords)
                    rows.append(EvalRow(entry.doc_id, name, ratio, report))
                except Exception as exc:  # noqa: BLE001
                    rows.append(EvalRow(entry.doc_id, name, ratio, None, error=str(exc)))
    return rows


def aggregate(rows: Sequence[EvalRow]) -> list[Aggregate]:
    """Mean and population SD of each metric per (variant, ratio).

    Skipped rows (those carrying an error) are excluded. Groups appear
    in first-seen row order.
    """
    groups: dict[tuple[str, float], list[RougeReport]] = {}
    for row in rows:
        if row.report is None:
            continue
        groups.setdefault((row.variant, row.ratio), []).append(row.report)
    out = []
    for (variant, ratio), reports in groups.items():
        recalls = [r.recall for r in reports]
        precisions = [r.precision for r in reports]
        fs = [r.f_score for r in reports]
        out.append(
            Aggregate(
                variant=variant,
                ratio=ratio,
                n_docs=len(reports),
                mean_recall=statistics.fmean(recalls),
                mean_precision=statistics.fmean(precisions),
                mean_f=statistics.fmean(fs),
                sd_recall=statistics.pstdev(recalls),
                sd_precision=statistics.pstdev(precisions),
                sd_f=statistics.pstdev(fs),
            )
        )
    return out
