"""Corpus loading, evaluation sweeps, and aggregation."""

import math

import pytest

from entsum.harness import (
    LEAD,
    CorpusError,
    EvalRow,
    aggregate,
    load_corpus,
    run_sweep,
)
from entsum.preprocess import preprocess
from entsum.rouge import RougeReport, rouge1
from entsum.summarizer import Variant


def _write_corpus(root, pairs):
    (root / "docs").mkdir()
    (root / "refs").mkdir()
    for name, doc, ref in pairs:
        (root / "docs" / f"{name}.txt").write_text(doc)
        if ref is not None:
            (root / "refs" / f"{name}.txt").write_text(ref)


class TestLoadCorpus:
    def test_bundled_corpus_loads_sorted(self, corpus):
        assert len(corpus) == 14
        ids = [e.doc_id for e in corpus]
        assert ids == sorted(ids)

    def test_missing_docs_directory_rejected(self, tmp_path):
        with pytest.raises(CorpusError):
            load_corpus(tmp_path)

    def test_empty_docs_directory_rejected(self, tmp_path):
        (tmp_path / "docs").mkdir()
        with pytest.raises(CorpusError):
            load_corpus(tmp_path)

    def test_document_without_reference_skipped_with_warning(self, tmp_path, caplog):
        _write_corpus(
            tmp_path,
            [
                ("a", "Alice built the engine.", "Alice built it."),
                ("b", "Bob slept late.", None),
            ],
        )
        with caplog.at_level("WARNING"):
            entries = load_corpus(tmp_path)
        assert [e.doc_id for e in entries] == ["a"]
        assert any("b" in rec.message for rec in caplog.records)


@pytest.fixture(scope="module")
def small_corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("mini")
    _write_corpus(
        root,
        [
            (
                "one",
                "Alice built a fast engine. Alice tested the engine. "
                "Rain fell over the quiet harbor.",
                "Alice built and tested a fast engine.",
            ),
            (
                "two",
                "The council approved the harbor lights. The council thanked "
                "the electricians. Gulls circled the quiet pier.",
                "The council approved new harbor lights.",
            ),
        ],
    )
    return load_corpus(root)


class TestRunSweep:
    def test_row_cardinality_and_order(self, small_corpus, lexicons):
        rows = run_sweep(small_corpus, ratios=(0.34, 0.67), lexicons=lexicons)
        # (3 variants + lead) x 2 ratios x 2 docs
        assert len(rows) == 16
        keys = [(r.doc_id, r.variant, r.ratio) for r in rows]
        assert keys[0] == ("one", "w", 0.34)
        assert keys == sorted(
            keys,
            key=lambda k: (
                k[0],
                ([v.value for v in Variant] + [LEAD]).index(k[1]),
                k[2],
            ),
        )

    def test_all_rows_succeed_on_wellformed_corpus(self, small_corpus, lexicons):
        rows = run_sweep(small_corpus, ratios=(0.34,), lexicons=lexicons)
        assert all(r.error is None for r in rows)
        assert all(r.report is not None for r in rows)

    def test_deterministic(self, small_corpus, lexicons):
        first = run_sweep(small_corpus, ratios=(0.34,), lexicons=lexicons)
        second = run_sweep(small_corpus, ratios=(0.34,), lexicons=lexicons)
        assert first == second

    def test_lead_rows_match_direct_rouge(self, small_corpus, lexicons):
        rows = run_sweep(small_corpus, ratios=(0.34,), lexicons=lexicons)
        lead = next(r for r in rows if r.variant == LEAD and r.doc_id == "one")
        doc = preprocess(small_corpus[0].document_path.read_text())
        expected = rouge1(
            doc.sentences[0].text,
            small_corpus[0].reference_path.read_text(),
            lexicons.stopwords,
        )
        assert lead.report == expected

    def test_unreadable_document_becomes_error_rows(self, small_corpus, lexicons, tmp_path):
        broken = small_corpus + load_corpus_alias(tmp_path)
        rows = run_sweep(broken, ratios=(0.34,), lexicons=lexicons)
        bad = [r for r in rows if r.doc_id == "ghost"]
        assert len(bad) == 4
        assert all(r.error is not None and r.report is None for r in bad)

    def test_recall_monotone_in_ratio(self, corpus, lexicons):
        rows = run_sweep(
            corpus, variants=(Variant.NW,), ratios=(0.10, 0.20), include_lead=False,
            lexicons=lexicons,
        )
        by_doc = {}
        for r in rows:
            by_doc.setdefault(r.doc_id, {})[r.ratio] = r.report.recall
        for doc_id, byratio in by_doc.items():
            assert byratio[0.20] >= byratio[0.10] - 1e-12, doc_id


def load_corpus_alias(tmp_path):
    # an entry whose files vanished after discovery
    _write_corpus(tmp_path, [("ghost", "Gone now.", "Gone.")])
    entries = load_corpus(tmp_path)
    (tmp_path / "docs" / "ghost.txt").unlink()
    return entries


class TestAggregate:
    def _row(self, variant, ratio, r, p, f):
        report = RougeReport(
            recall=r, precision=p, f_score=f, matched=1, ref_count=1, sys_count=1
        )
        return EvalRow("d", variant, ratio, report)

    def test_mean_and_population_sd(self):
        rows = [
            self._row("nw", 0.15, 0.2, 0.4, 0.3),
            self._row("nw", 0.15, 0.4, 0.2, 0.3),
        ]
        (agg,) = aggregate(rows)
        assert agg.n_docs == 2
        assert agg.mean_recall == pytest.approx(0.3)
        assert agg.sd_recall == pytest.approx(0.1)
        assert agg.sd_f == pytest.approx(0.0)

    def test_error_rows_excluded(self):
        rows = [
            self._row("nw", 0.15, 0.2, 0.2, 0.2),
            EvalRow("d2", "nw", 0.15, None, error="boom"),
        ]
        (agg,) = aggregate(rows)
        assert agg.n_docs == 1

    def test_groups_by_variant_and_ratio(self):
        rows = [
            self._row("nw", 0.15, 0.2, 0.2, 0.2),
            self._row("nw", 0.20, 0.4, 0.4, 0.4),
            self._row("w", 0.15, 0.6, 0.6, 0.6),
        ]
        aggs = aggregate(rows)
        assert {(a.variant, a.ratio) for a in aggs} == {
            ("nw", 0.15),
            ("nw", 0.20),
            ("w", 0.15),
        }

    def test_empty_input_gives_empty_output(self):
        assert aggregate([]) == []


def test_full_corpus_sweep_is_clean(corpus, lexicons):
    rows = run_sweep(corpus, lexicons=lexicons)
    assert len(rows) == 14 * 4 * 3
    assert all(r.error is None for r in rows)
    for row in rows:
        assert not math.isnan(row.report.f_score)
        assert 0.0 <= row.report.f_score <= 1.0
