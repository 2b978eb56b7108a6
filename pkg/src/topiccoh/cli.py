"""Command-line interface.

Subcommands: ``score``, ``generate``, ``correlate``, ``rate-stats`` and
``index-stats``. Numbers are printed with six fractional digits. Exit status
is 2 for unreadable or malformed input and 3 for statistics that cannot be
computed (constant rankings, unequal rater counts).
"""
from __future__ import annotations

import argparse
import random
import sys
from collections import defaultdict
from pathlib import Path

from .coherence import CoherenceKind, as_word_set, coherence
from .corpus import (
    CorpusConfig,
    build_window_index,
    filter_vocabulary,
    ingest_corpus,
    read_corpus,
    top_tfidf_terms,
)
from .errors import (
    CoherenceError,
    InputFormatError,
    InsufficientSupportError,
    UnequalRaterCountError,
)
from .rating import (
    LABELS,
    average_rating,
    fleiss_kappa,
    kendall_tau,
    label_breakdown,
    majority_label,
    read_ratings,
)
from .search import BeamConfig, generate_all

EXIT_INPUT = 2
EXIT_STATS = 3

MEASURES = [k.value for k in CoherenceKind]


class CommandError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


def fmt(value: float) -> str:
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _load_corpus(path):
    try:
        return read_corpus(path)
    except OSError as exc:
        raise CommandError(f"cannot read corpus {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise CommandError(f"{path}: not valid UTF-8 ({exc.reason})") from None


def _indexes(args, need_windows):
    config = CorpusConfig(args.min_df, args.max_df, args.window_size)
    docs = _load_corpus(args.corpus)
    index = filter_vocabulary(ingest_corpus(docs), config.min_df, config.max_df)
    windows = None
    if need_windows:
        source = docs if args.window_corpus is None else _load_corpus(args.window_corpus)
        windows = build_window_index(source, config.window_size)
    return index, windows


def read_word_sets(path) -> list[tuple[int, tuple[str, ...]]]:
    """``(line number, terms)`` for each non-blank line; tabs or spaces split terms."""
    sets = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                terms = line.split()
                if terms:
                    sets.append((lineno, tuple(terms)))
    except OSError as exc:
        raise CommandError(f"cannot read word sets {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise CommandError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    return sets


def cmd_score(args, out, err):
    kind = CoherenceKind(args.measure)
    index, windows = _indexes(args, kind is CoherenceKind.UCI)
    reference = windows if kind is CoherenceKind.UCI else index
    sets = read_word_sets(args.sets)
    problems = []
    for lineno, terms in sets:
        try:
            as_word_set(terms)
        except CoherenceError as exc:
            problems.append(f"{args.sets}:{lineno}: {exc}")
            continue
        missing = [t for t in terms if t not in reference]
        if missing:
            problems.append(f"{args.sets}:{lineno}: out-of-vocabulary term(s): {' '.join(missing)}")
    if problems:
        raise CommandError("\n".join(problems))
    unscored = 0
    for lineno, terms in sets:
        try:
            result = coherence(index, terms, kind, min_support=args.min_support,
                               windows=windows, aggregation=args.aggregation)
        except InsufficientSupportError as exc:
            unscored += 1
            out.write(f"{lineno}\t{kind}\tNA\t{exc.pairs_total}\t{exc.pairs_total}\n")
            continue
        row = [str(lineno), str(kind), fmt(result.score)]
        if kind.uses_subset_pairs:
            row += [str(result.pairs_total), str(result.pairs_pruned)]
        out.write("\t".join(row) + "\n")
    if unscored:
        err.write(f"{unscored} word set(s) with insufficient support scored NA\n")
    return 0


def cmd_generate(args, out, err):
    config = BeamConfig(
        beam_width=args.beam,
        target_length=args.length,
        measure=args.measure,
        min_support=args.min_support,
        seed_count=args.seeds,
        aggregation=args.aggregation,
    )
    index, windows = _indexes(args, config.measure is CoherenceKind.UCI)
    generated = generate_all(index, config, windows=windows)
    rows = [f"{g.seed}\t{fmt(g.score)}\t{' '.join(g.terms)}\n" for g in generated]
    if args.sample is not None:
        if args.sample < 0:
            raise CommandError("--sample must be non-negative")
        if args.sample < len(rows):
            picked = random.Random(args.rng_seed).sample(range(len(rows)), args.sample)
            rows = [rows[i] for i in sorted(picked)]
    out.writelines(rows)
    err.write(f"{len(generated)} word set(s) generated, {len(rows)} written\n")
    return 0


def _read_scores(path):
    """Scores grouped by measure: ``{measure: [(set_id, score or None)]}``."""
    grouped = defaultdict(list)
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                fields = line.rstrip("\r\n").split("\t")
                if fields == [""]:
                    continue
                if len(fields) < 3:
                    raise CommandError(f"{path}:{lineno}: expected set_id, measure, score")
                set_id, measure, score = fields[:3]
                if score == "NA":
                    grouped[measure].append((set_id, None))
                    continue
                try:
                    grouped[measure].append((set_id, float(score)))
                except ValueError:
                    raise CommandError(f"{path}:{lineno}: bad score {score!r}") from None
    except OSError as exc:
        raise CommandError(f"cannot read scores {path}: {exc.strerror or exc}") from None
    return grouped


def _read_ratings(path):
    try:
        return read_ratings(path)
    except OSError as exc:
        raise CommandError(f"cannot read ratings {path}: {exc.strerror or exc}") from None
    except InputFormatError as exc:
        raise CommandError(str(exc)) from None


def cmd_correlate(args, out, err):
    grouped = _read_scores(args.scores)
    table = _read_ratings(args.ratings)
    lines = []
    for measure, rows in grouped.items():
        missing = [s for s, _ in rows if s not in table]
        if missing:
            raise CommandError(f"no ratings for set(s): {', '.join(missing[:10])}")
        kept = [(s, v) for s, v in rows if v is not None]
        xs = [v for _, v in kept]
        ys = [average_rating(table.labels(s)) for s, _ in kept]
        try:
            tau = kendall_tau(xs, ys)
        except CoherenceError as exc:
            raise CommandError(f"{measure}: {exc}", EXIT_STATS) from None
        lines.append(f"{measure}\ttau={fmt(tau)}\titems={len(kept)}\texcluded={len(rows) - len(kept)}\n")
    out.writelines(lines)
    return 0


def cmd_rate_stats(args, out, err):
    table = _read_ratings(args.ratings)
    if args.equalize:
        table = table.equalized(args.rng_seed)
    try:
        kappa = fleiss_kappa(table)
    except UnequalRaterCountError as exc:
        raise CommandError(f"{exc}; rerun with --equalize", EXIT_STATS) from None
    except CoherenceError as exc:
        raise CommandError(str(exc), EXIT_STATS) from None
    for set_id in table.set_ids:
        labels = table.labels(set_id)
        out.write(f"{set_id}\t{majority_label(labels)}\t{fmt(average_rating(labels))}\n")
    breakdown = label_breakdown(table)
    out.write(f"kappa\t{fmt(kappa)}\n")
    out.write("breakdown\t" + "\t".join(f"{label}={fmt(breakdown[label])}" for label in LABELS) + "\n")
    return 0


def cmd_index_stats(args, out, err):
    config = CorpusConfig(args.min_df, args.max_df, args.window_size)
    docs = _load_corpus(args.corpus)
    raw = ingest_corpus(docs)
    index = filter_vocabulary(raw, config.min_df, config.max_df)
    window_docs = docs if args.window_corpus is None else _load_corpus(args.window_corpus)
    windows = build_window_index(window_docs, config.window_size)
    rows = [
        ("documents", raw.doc_count),
        ("tokens", sum(raw.term_freq.values())),
        ("vocabulary", len(raw.vocabulary)),
        ("vocabulary_filtered", len(index.vocabulary)),
        ("window_size", windows.window_size),
        ("windows", windows.window_count),
    ]
    for key, value in rows:
        out.write(f"{key}\t{value}\n")
    if index.vocabulary:
        out.write("top_tfidf\t" + " ".join(top_tfidf_terms(index, args.seeds)) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    corpus = argparse.ArgumentParser(add_help=False)
    corpus.add_argument("--corpus", required=True, type=Path,
                        help="one document per line, space-separated tokens")
    corpus.add_argument("--window-corpus", type=Path,
                        help="reference text for UCI window counts (default: --corpus)")
    corpus.add_argument("--window-size", type=int, default=10)
    corpus.add_argument("--min-df", type=float, default=0.01)
    corpus.add_argument("--max-df", type=float, default=0.60)

    measure = argparse.ArgumentParser(add_help=False)
    measure.add_argument("--measure", choices=MEASURES, default="one-any")
    measure.add_argument("--min-support", type=int, default=10,
                         help="prune subset pairs whose condition is in at most this many documents")
    measure.add_argument("--aggregation", choices=["mean", "median"], default="mean",
                         help="uci only")

    parser = argparse.ArgumentParser(prog="topiccoh", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", parents=[corpus, measure], help="score a word-set file")
    p.add_argument("sets", type=Path, help="one word set per line")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("generate", parents=[corpus, measure],
                       help="generate word sets by beam search")
    p.add_argument("--beam", type=int, default=3)
    p.add_argument("--length", type=int, default=5)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--sample", type=int)
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("correlate", help="Kendall tau-b of scores against average ratings")
    p.add_argument("scores", type=Path, help="TSV written by `score`")
    p.add_argument("ratings", type=Path, help="CSV with set_id,rater_id,label")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("rate-stats", help="majority labels, averages and Fleiss' kappa")
    p.add_argument("ratings", type=Path)
    p.add_argument("--equalize", action="store_true",
                   help="downsample items to the smallest rater count")
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_rate_stats)

    p = sub.add_parser("index-stats", parents=[corpus], help="corpus and vocabulary statistics")
    p.add_argument("--seeds", type=int, default=20, help="number of top TF-IDF terms to list")
    p.set_defaults(func=cmd_index_stats)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except CommandError as exc:
        err.write(f"topiccoh {args.command}: {exc}\n")
        return exc.code
    except CoherenceError as exc:
        err.write(f"topiccoh {args.command}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
