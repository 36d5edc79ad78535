"""Command-line interface.

Subcommands: ``summarize`` a document, dump ``keywords`` or ``triples``,
and ``eval`` a corpus directory. Exit codes: 0 success, 1 usage error,
2 I/O or input-format error, 3 corpus error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import harness
from .graph import EntityGraph, build_graph, filter_subjects
from .lexicon import Lexicons
from .preprocess import preprocess
from .summarizer import (
    NORMALIZERS,
    Analysis,
    SummaryConfig,
    Variant,
    analyze,
    render_summary,
    select_by_word_budget,
    summarize,
)
from .triples import TripleFileError, ingest_triples

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CORPUS = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad arguments; this tool reserves 2
    # for I/O problems, so usage errors are rerouted to exit code 1.
    def error(self, message):  # noqa: D102
        raise _UsageError(message)


def _ratio(value: str) -> float:
    ratio = float(value)
    if not 0 < ratio <= 1:
        raise argparse.ArgumentTypeError(f"ratio must be in (0, 1], got {value}")
    return ratio


def _ratio_list(value: str) -> list[float]:
    return [_ratio(part) for part in value.split(",") if part.strip()]


def _variant_list(value: str) -> list[Variant]:
    names = [part.strip() for part in value.split(",") if part.strip()]
    try:
        return [Variant(name) for name in names]
    except ValueError:
        valid = ", ".join(v.value for v in Variant)
        raise argparse.ArgumentTypeError(f"variants must be among: {valid}")


def _add_lexicon_flags(parser: argparse.ArgumentParser, with_pronouns: bool = True) -> None:
    parser.add_argument("--stopwords", metavar="FILE", help="replace the bundled stopword list")
    parser.add_argument("--verbs", metavar="FILE", help="replace the bundled verb lexicon")
    if with_pronouns:
        parser.add_argument("--pronouns", metavar="FILE", help="replace the bundled pronoun list")
    parser.add_argument(
        "--abbreviations", metavar="FILE", help="replace the bundled abbreviation list"
    )


def _lexicons(args: argparse.Namespace) -> Lexicons:
    return Lexicons.bundled(
        stopwords_path=getattr(args, "stopwords", None),
        verbs_path=getattr(args, "verbs", None),
        pronouns_path=getattr(args, "pronouns", None),
        abbreviations_path=getattr(args, "abbreviations", None),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("summarize", help="summarize a text file")
    p_sum.add_argument("file", help="UTF-8 text document")
    p_sum.add_argument("--ratio", type=_ratio, default=0.15, help="summary length fraction")
    p_sum.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.NW.value,
        help="scoring variant",
    )
    p_sum.add_argument("--normalize", choices=NORMALIZERS, default="none",
                       help="divide scores by f(sentence length)")
    p_sum.add_argument("--triples-file", metavar="FILE",
                       help="ingest externally extracted triples (JSON lines)")
    p_sum.add_argument("--word-budget", type=int, metavar="N",
                       help="select by token budget instead of sentence ratio")
    p_sum.add_argument("--json", action="store_true", help="emit a JSON record")
    _add_lexicon_flags(p_sum)

    p_kw = sub.add_parser("keywords", help="dump keyword and keyphrase tables")
    p_kw.add_argument("file")
    p_kw.add_argument("--json", action="store_true", help="emit a JSON record")
    _add_lexicon_flags(p_kw, with_pronouns=False)

    p_tr = sub.add_parser("triples", help="dump cleaned, resolved triples")
    p_tr.add_argument("file")
    p_tr.add_argument("--triples-file", metavar="FILE",
                      help="ingest externally extracted triples (JSON lines)")
    p_tr.add_argument("--graph-out", metavar="PREFIX",
                      help="write PREFIX.edges.tsv and PREFIX.nodes.tsv")
    p_tr.add_argument("--json", action="store_true", help="emit JSON lines")
    _add_lexicon_flags(p_tr)

    p_ev = sub.add_parser("eval", help="evaluate a corpus directory")
    p_ev.add_argument("--corpus", required=True, metavar="DIR",
                      help="directory with docs/ and refs/")
    p_ev.add_argument("--ratios", type=_ratio_list, default=list(harness.DEFAULT_RATIOS),
                      metavar="R1,R2,...", help="comma-separated ratios")
    p_ev.add_argument("--variants", type=_variant_list,
                      default=list(harness.DEFAULT_VARIANTS),
                      metavar="V1,V2,...", help="comma-separated variants")
    fmt = p_ev.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit a JSON record")
    fmt.add_argument("--csv", action="store_true", help="emit per-document CSV rows")
    _add_lexicon_flags(p_ev, with_pronouns=False)
    return parser


def _read_document(path: str, lex: Lexicons):
    text = Path(path).read_text(encoding="utf-8")
    return preprocess(text, lex.abbreviations, lex.stopwords)


def _score_value(score) -> float:
    return float(score)


def cmd_summarize(args: argparse.Namespace) -> int:
    lex = _lexicons(args)
    document = _read_document(args.file, lex)
    external = ingest_triples(args.triples_file, document) if args.triples_file else None
    config = SummaryConfig(
        variant=Variant(args.variant), ratio=args.ratio, normalize=args.normalize
    )
    result = summarize(document, config, lex, external)
    if args.word_budget is not None:
        if args.word_budget < 1:
            raise _UsageError("--word-budget must be >= 1")
        result = select_by_word_budget(
            result.scores, document, args.word_budget, config, result.intermediate_size
        )
    summary = render_summary(document, result)
    if args.json:
        record = {
            "variant": config.variant.value,
            "ratio": config.ratio,
            "normalize": config.normalize,
            "word_budget": args.word_budget,
            "selected": list(result.selected),
            "intermediate_size": result.intermediate_size,
            "scores": [
                {"index": s.sentence_index, "score": _score_value(s.raw_score), "rank": s.rank}
                for s in result.scores
            ],
            "summary": summary,
        }
        print(json.dumps(record, indent=2))
    elif summary:
        print(summary)
    return EXIT_OK


def cmd_keywords(args: argparse.Namespace) -> int:
    lex = _lexicons(args)
    document = _read_document(args.file, lex)
    analysis = analyze(document, lex)
    stats = sorted(analysis.stats.values(), key=lambda s: (-s.score, s.keyword))
    phrases = sorted(analysis.keyphrases, key=lambda p: (-p.score, p.words))
    if args.json:
        record = {
            "keywords": [
                {
                    "keyword": s.keyword,
                    "frequency": s.frequency,
                    "degree": s.degree,
                    "score": _score_value(s.score),
                }
                for s in stats
            ],
            "keyphrases": [
                {
                    "phrase": " ".join(p.words),
                    "score": _score_value(p.score),
                    "occurrences": [
                        {"sentence": si, "span": list(span)}
                        for si, span in p.sentence_occurrences
                    ],
                }
                for p in phrases
            ],
        }
        print(json.dumps(record, indent=2))
        return EXIT_OK
    width = max((len(s.keyword) for s in stats), default=7)
    print(f"{'keyword':<{width}}  freq  degree   score")
    for s in stats:
        print(f"{s.keyword:<{width}}  {s.frequency:>4}  {s.degree:>6}  {_score_value(s.score):>6.2f}")
    print()
    pwidth = max((len(' '.join(p.words)) for p in phrases), default=9)
    print(f"{'keyphrase':<{pwidth}}   score  occurrences")
    for p in phrases:
        name = " ".join(p.words)
        print(f"{name:<{pwidth}}  {_score_value(p.score):>6.2f}  {len(p.sentence_occurrences):>3}")
    return EXIT_OK


def _write_graph(graph: EntityGraph, prefix: str) -> None:
    edges_path = Path(f"{prefix}.edges.tsv")
    nodes_path = Path(f"{prefix}.nodes.tsv")
    with edges_path.open("w", encoding="utf-8") as fh:
        for i, row in enumerate(graph.adjacency):
            for j, count in enumerate(row):
                if count:
                    fh.write(f"{graph.nodes[i]}\t{graph.nodes[j]}\t{count}\n")
    with nodes_path.open("w", encoding="utf-8") as fh:
        for node, conn in zip(graph.nodes, graph.connectivity):
            fh.write(f"{node}\t{conn}\n")


def cmd_triples(args: argparse.Namespace) -> int:
    lex = _lexicons(args)
    document = _read_document(args.file, lex)
    external = ingest_triples(args.triples_file, document) if args.triples_file else None
    analysis: Analysis = analyze(document, lex, external)
    if args.json:
        for t in analysis.resolved:
            print(json.dumps({
                "s": t.subject, "a": t.action, "o": t.object, "i": t.sentence_index,
                "provenance": t.provenance, "resolved": t.resolved,
            }))
    else:
        for t in analysis.resolved:
            flag = "*" if t.resolved else " "
            print(f"{t.sentence_index:>3}{flag} ({t.subject} | {t.action} | {t.object})")
    if args.graph_out:
        _write_graph(analysis.graph, args.graph_out)
    return EXIT_OK


def _eval_rows_csv(rows: list[harness.EvalRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["doc_id", "variant", "ratio", "recall", "precision", "f"])
    for row in rows:
        if row.report is None:
            continue
        writer.writerow([
            row.doc_id, row.variant, f"{row.ratio:.2f}",
            f"{row.report.recall:.4f}", f"{row.report.precision:.4f}",
            f"{row.report.f_score:.4f}",
        ])
    return buf.getvalue()


def cmd_eval(args: argparse.Namespace) -> int:
    lex = _lexicons(args)
    corpus = harness.load_corpus(args.corpus)
    rows = harness.run_sweep(corpus, args.variants, args.ratios, lex)
    skipped = [r for r in rows if r.error]
    for row in skipped:
        print(f"skipped {row.doc_id} {row.variant} {row.ratio:.2f}: {row.error}", file=sys.stderr)
    if args.csv:
        sys.stdout.write(_eval_rows_csv(rows))
        return EXIT_OK
    aggregates = harness.aggregate(rows)
    if args.json:
        record = {
            "rows": [
                {
                    "doc_id": r.doc_id, "variant": r.variant, "ratio": r.ratio,
                    "recall": r.report.recall if r.report else None,
                    "precision": r.report.precision if r.report else None,
                    "f": r.report.f_score if r.report else None,
                    "error": r.error,
                }
                for r in rows
            ],
            "aggregates": [
                {
                    "variant": a.variant, "ratio": a.ratio, "n_docs": a.n_docs,
                    "mean_recall": a.mean_recall, "mean_precision": a.mean_precision,
                    "mean_f": a.mean_f, "sd_recall": a.sd_recall,
                    "sd_precision": a.sd_precision, "sd_f": a.sd_f,
                }
                for a in aggregates
            ],
        }
        print(json.dumps(record, indent=2))
        return EXIT_OK
    print(f"{'variant':<8} {'ratio':>5}  {'docs':>4}  {'recall':>14}  {'precision':>14}  {'f':>14}")
    for a in aggregates:
        print(
            f"{a.variant:<8} {a.ratio:>5.2f}  {a.n_docs:>4}"
            f"  {a.mean_recall:>6.4f} ±{a.sd_recall:.4f}"
            f"  {a.mean_precision:>6.4f} ±{a.sd_precision:.4f}"
            f"  {a.mean_f:>6.4f} ±{a.sd_f:.4f}"
        )
    return EXIT_OK


_COMMANDS = {
    "summarize": cmd_summarize,
    "keywords": cmd_keywords,
    "triples": cmd_triples,
    "eval": cmd_eval,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TripleFileError as exc:
        print(f"error: {args.triples_file}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except harness.CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CORPUS


if __name__ == "__main__":
    sys.exit(main())
