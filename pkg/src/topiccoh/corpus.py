"""Occurrence indexes over a tokenized corpus.

Input text is one document per line with tokens separated by single spaces.
Nothing is normalized here; lemmatization, stopword removal and the like are
expected to have happened upstream.

Two indexes share the same layout. :class:`DocumentIndex` treats each line as
one document (boolean document model). :class:`WindowIndex` treats every
stride-1 window of ``window_size`` tokens as a virtual document (boolean
window model). Postings are sorted, read-only ``int32`` arrays.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import CoherenceError, EmptyCorpusError, OutOfVocabularyError

Tokens = Sequence[str]


@dataclass(frozen=True)
class CorpusConfig:
    """Vocabulary filtering bounds (fractions of documents) and window size."""

    min_df: float = 0.01
    max_df: float = 0.60
    window_size: int = 10

    def __post_init__(self):
        if not 0.0 <= self.min_df <= self.max_df <= 1.0:
            raise CoherenceError(
                f"need 0 <= min_df <= max_df <= 1, got min_df={self.min_df}, max_df={self.max_df}"
            )
        if self.window_size < 1:
            raise CoherenceError(f"window_size must be positive, got {self.window_size}")


def _frozen_array(values) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.int32)
    arr.setflags(write=False)
    return arr


class _OccurrenceIndex:
    """Shared lookups for document and window indexes."""

    postings: Mapping[str, np.ndarray]

    @property
    def size(self) -> int:
        """Number of (virtual) documents probabilities are normalized by."""
        raise NotImplementedError

    def __contains__(self, term) -> bool:
        return term in self.postings

    def posting(self, term: str) -> np.ndarray:
        try:
            return self.postings[term]
        except KeyError:
            raise OutOfVocabularyError(term) from None

    def df(self, term: str) -> int:
        return len(self.posting(term))


@dataclass(frozen=True, eq=False)
class DocumentIndex(_OccurrenceIndex):
    vocabulary: tuple[str, ...]
    doc_count: int
    postings: Mapping[str, np.ndarray]
    term_freq: Mapping[str, int]

    @property
    def size(self) -> int:
        return self.doc_count

    def to_bytes(self) -> bytes:
        """Canonical serialization; equal indexes give equal bytes."""
        header = json.dumps(
            {
                "doc_count": self.doc_count,
                "vocabulary": list(self.vocabulary),
                "term_freq": [self.term_freq[t] for t in self.vocabulary],
                "df": [len(self.postings[t]) for t in self.vocabulary],
            },
            ensure_ascii=False,
            separators=(",", ":"),
        ).encode("utf-8")
        body = b"".join(self.postings[t].astype("<i4").tobytes() for t in self.vocabulary)
        return len(header).to_bytes(8, "little") + header + body

    def __eq__(self, other):
        if not isinstance(other, DocumentIndex):
            return NotImplemented
        return self.to_bytes() == other.to_bytes()

    __hash__ = None


@dataclass(frozen=True, eq=False)
class WindowIndex(_OccurrenceIndex):
    window_size: int
    window_count: int
    postings: Mapping[str, np.ndarray]

    @property
    def size(self) -> int:
        return self.window_count

    @property
    def vocabulary(self) -> tuple[str, ...]:
        return tuple(sorted(self.postings))


def tokenize(line: str) -> list[str]:
    return [tok for tok in line.rstrip("\r\n").split(" ") if tok]


def _documents(lines: Iterable[str | Tokens]) -> Iterator[list[str]]:
    for line in lines:
        tokens = tokenize(line) if isinstance(line, str) else [t for t in line if t]
        if tokens:
            yield tokens


def read_corpus(path: str | Path) -> list[list[str]]:
    """Read a corpus file into token lists, skipping blank lines."""
    with open(path, encoding="utf-8") as fh:
        return list(_documents(fh))


def ingest_corpus(lines: Iterable[str | Tokens]) -> DocumentIndex:
    """Build a :class:`DocumentIndex` from text lines or token sequences.

    Each non-empty line is one document. Repeated tokens within a document
    raise the term frequency but add a single posting.

    >>> idx = ingest_corpus(["a b c", "a b", "a c", "b c"])
    >>> idx.doc_count, idx.posting("a").tolist()
    (4, [0, 1, 2])
    """
    postings: dict[str, list[int]] = {}
    term_freq: Counter[str] = Counter()
    doc_id = -1
    for doc_id, tokens in enumerate(_documents(lines)):
        term_freq.update(tokens)
        for term in dict.fromkeys(tokens):
            postings.setdefault(term, []).append(doc_id)
    if doc_id < 0:
        raise EmptyCorpusError()
    vocabulary = tuple(sorted(postings))
    return DocumentIndex(
        vocabulary=vocabulary,
        doc_count=doc_id + 1,
        postings=MappingProxyType({t: _frozen_array(postings[t]) for t in vocabulary}),
        term_freq=MappingProxyType({t: term_freq[t] for t in vocabulary}),
    )


def filter_vocabulary(index: DocumentIndex, min_df: float, max_df: float) -> DocumentIndex:
    """Keep terms with ``min_df * D < df < max_df * D``.

    Both bounds are strict: terms in at most ``min_df`` or at least ``max_df``
    of the documents are dropped. Bounds are compared as exact decimals, so
    ``max_df=0.6`` with ``D=100`` drops a term with ``df=60``.
    """
    CorpusConfig(min_df=min_df, max_df=max_df)
    lo = Fraction(repr(float(min_df))) * index.doc_count
    hi = Fraction(repr(float(max_df))) * index.doc_count
    kept = tuple(t for t in index.vocabulary if lo < len(index.postings[t]) < hi)
    return DocumentIndex(
        vocabulary=kept,
        doc_count=index.doc_count,
        postings=MappingProxyType({t: index.postings[t] for t in kept}),
        term_freq=MappingProxyType({t: index.term_freq[t] for t in kept}),
    )


def build_window_index(lines: Iterable[str | Tokens], window_size: int = 10) -> WindowIndex:
    """Index stride-1 sliding windows as virtual documents.

    A document of ``t`` tokens yields ``max(1, t - window_size + 1)`` windows;
    windows never cross document boundaries.
    """
    if window_size < 1:
        raise CoherenceError(f"window_size must be positive, got {window_size}")
    # per term: inclusive [start, end] runs of window ids, ascending and disjoint
    starts: dict[str, list[int]] = {}
    ends: dict[str, list[int]] = {}
    offset = 0
    seen_doc = False
    for tokens in _documents(lines):
        seen_doc = True
        n_windows = max(1, len(tokens) - window_size + 1)
        last = offset + n_windows - 1
        for pos, term in enumerate(tokens):
            lo = offset + max(0, pos - window_size + 1)
            hi = min(offset + pos, last)
            term_starts = starts.get(term)
            if term_starts is None:
                starts[term] = [lo]
                ends[term] = [hi]
                continue
            term_ends = ends[term]
            if lo <= term_ends[-1] + 1:
                if hi > term_ends[-1]:
                    term_ends[-1] = hi
            else:
                term_starts.append(lo)
                term_ends.append(hi)
        offset += n_windows
    if not seen_doc:
        raise EmptyCorpusError()
    postings = {}
    for term in sorted(starts):
        s = np.asarray(starts[term], dtype=np.int64)
        lengths = np.asarray(ends[term], dtype=np.int64) - s + 1
        # expand runs: id = run start + position within run
        run_offsets = np.repeat(s - np.concatenate(([0], np.cumsum(lengths)[:-1])), lengths)
        postings[term] = _frozen_array(run_offsets + np.arange(lengths.sum()))
    return WindowIndex(
        window_size=window_size,
        window_count=offset,
        postings=MappingProxyType(postings),
    )


def tfidf_scores(index: DocumentIndex) -> dict[str, float]:
    D = index.doc_count
    return {t: index.term_freq[t] * math.log(D / len(index.postings[t])) for t in index.vocabulary}


def top_tfidf_terms(index: DocumentIndex, n: int) -> list[str]:
    """Rank terms by ``term_freq * ln(D / df)``, best first, ties by term."""
    if n < 1:
        raise CoherenceError(f"n must be positive, got {n}")
    scores = tfidf_scores(index)
    return sorted(scores, key=lambda t: (-scores[t], t))[:n]
