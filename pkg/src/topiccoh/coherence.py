"""Coherence measures for word sets.

Three measures average a confirmation score over pairs ``(W', W*)`` of
disjoint, non-empty subsets of the word set ``W``:

* ``one-all``: each single word against the rest of the set,
* ``one-any``: each single word against every non-empty subset of the rest,
* ``any-any``: every non-empty proper subset against every non-empty subset
  of its complement.

The confirmation score is the difference measure
``d(W', W*) = p(W' | W*) - p(W')``. Their qualitative counterparts ask whether
``p(W' | W*) > p(W')`` holds for every pair.

Two pairwise baselines are included: UMass (document co-occurrence with
``1/D`` smoothing, order-sensitive) and UCI (PMI over sliding windows).

All measures are computed from the word set's support table (see
:mod:`topiccoh.kernels`), built once in a single pass over the postings.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import kernels
from .corpus import DocumentIndex, WindowIndex, _OccurrenceIndex
from .errors import (
    CoherenceError,
    InsufficientSupportError,
    UndefinedConditionalError,
    WordSetTooSmallError,
)
from .probability import conditional_probability, joint_probability

#: Support tables have ``2**n`` entries, so word sets are capped.
MAX_TERMS = 20


class CoherenceKind(str, Enum):
    ONE_ALL = "one-all"
    ONE_ANY = "one-any"
    ANY_ANY = "any-any"
    UMASS = "umass"
    UCI = "uci"

    @property
    def code(self) -> int:
        return _KIND_CODES[self]

    @property
    def uses_subset_pairs(self) -> bool:
        return self in (CoherenceKind.ONE_ALL, CoherenceKind.ONE_ANY, CoherenceKind.ANY_ANY)

    def __str__(self):
        return self.value


_KIND_CODES = {
    CoherenceKind.ONE_ALL: kernels.ONE_ALL,
    CoherenceKind.ONE_ANY: kernels.ONE_ANY,
    CoherenceKind.ANY_ANY: kernels.ANY_ANY,
    CoherenceKind.UMASS: kernels.UMASS,
    CoherenceKind.UCI: kernels.UCI,
}


@dataclass(frozen=True)
class SubsetPair:
    conditioned: frozenset[str]
    condition: frozenset[str]


@dataclass(frozen=True)
class CoherenceResult:
    """Score plus pair bookkeeping; ``score`` averages the unpruned pairs."""

    score: float
    pairs_total: int
    pairs_pruned: int


def as_word_set(terms: Sequence[str], minimum: int = 2) -> tuple[str, ...]:
    """Validate an ordered word set: distinct terms, ``minimum <= n <= MAX_TERMS``."""
    terms = tuple(terms)
    if len(terms) < minimum:
        raise WordSetTooSmallError(len(terms), minimum)
    if len(terms) > MAX_TERMS:
        raise CoherenceError(f"word set too large: {len(terms)} terms, at most {MAX_TERMS}")
    if len(set(terms)) != len(terms):
        dupes = sorted({t for t in terms if terms.count(t) > 1})
        raise CoherenceError(f"duplicate terms in word set: {dupes}")
    return terms


def _subset_kind(kind) -> CoherenceKind:
    kind = CoherenceKind(kind)
    if not kind.uses_subset_pairs:
        raise CoherenceError(f"{kind} is not a subset-pair coherence")
    return kind


def support_table(index: _OccurrenceIndex, terms: Sequence[str]) -> np.ndarray:
    """Supports of every subset of ``terms``, indexed by bitmask."""
    postings = [index.posting(t) for t in terms]
    return kernels.superset_sums(kernels.mask_histogram(postings, index.size))


def subset_pairs(terms: Sequence[str], kind) -> list[SubsetPair]:
    """Enumerate the subset pairs a coherence kind averages over.

    Conditioned subsets come first in ascending bitmask order (bit ``i`` is
    ``terms[i]``), then conditions in ascending bitmask order. Empty
    conditions are never produced, so ``n`` terms give ``n`` one-all pairs,
    ``n * (2**(n-1) - 1)`` one-any pairs and ``3**n - 2**(n+1) + 1`` any-any
    pairs.
    """
    terms = as_word_set(terms)
    kind = _subset_kind(kind)

    def members(mask):
        return frozenset(t for i, t in enumerate(terms) if mask >> i & 1)

    return [
        SubsetPair(members(w), members(c))
        for w, c in kernels.subset_pair_masks(len(terms), kind.code)
    ]


def difference_confirmation(index: _OccurrenceIndex, pair: SubsetPair) -> float | None:
    """``p(W' | W*) - p(W')``, or ``None`` if ``W*`` occurs nowhere."""
    try:
        conditional, _ = conditional_probability(index, pair.conditioned, pair.condition)
    except UndefinedConditionalError:
        return None
    return conditional - joint_probability(index, pair.conditioned)


def qualitative_coherence(index: _OccurrenceIndex, terms: Sequence[str], kind) -> bool:
    """True iff every required pair satisfies ``p(W' | W*) > p(W')``.

    No support pruning happens here; a pair whose condition never occurs
    makes the word set incoherent.
    """
    terms = as_word_set(terms)
    kind = _subset_kind(kind)
    table = support_table(index, terms)
    return bool(kernels.qualitative_table(table, len(terms), kind.code, index.size))


def quantitative_coherence(
    index: _OccurrenceIndex, terms: Sequence[str], kind, min_support: int = 10
) -> CoherenceResult:
    """Mean difference confirmation over the kind's subset pairs.

    Pairs whose condition is contained in ``min_support`` or fewer documents
    are skipped. Raises :class:`InsufficientSupportError` if nothing is left.
    """
    terms = as_word_set(terms)
    kind = _subset_kind(kind)
    if min_support < 0:
        raise CoherenceError(f"min_support must be non-negative, got {min_support}")
    table = support_table(index, terms)
    score, total, pruned = kernels.score_table(
        table, len(terms), kind.code, index.size, min_support, False
    )
    if pruned == total:
        raise InsufficientSupportError(total)
    return CoherenceResult(float(score), int(total), int(pruned))


def umass_coherence(index: DocumentIndex, terms: Sequence[str]) -> float:
    """Sum over ordered pairs ``l < m`` of ``ln((p(w_m, w_l) + 1/D) / p(w_l))``.

    >>> idx = __import__("topiccoh").ingest_corpus(["a b", "a", "a", "b"])
    >>> round(umass_coherence(idx, ["a", "b"]), 6)
    -0.405465
    """
    terms = as_word_set(terms)
    table = support_table(index, terms)
    score, _, _ = kernels.score_table(table, len(terms), kernels.UMASS, index.size, 0, False)
    return float(score)


def uci_coherence(windows: WindowIndex, terms: Sequence[str], aggregation: str = "mean") -> float:
    """Mean (or median) PMI over unordered word pairs, from window counts.

    ``PMI(x, y) = ln((p(x, y) + 1/N) / (p(x) p(y)))`` with ``N`` windows; the
    ``1/N`` term keeps never co-occurring pairs finite.
    """
    if aggregation not in ("mean", "median"):
        raise CoherenceError(f"aggregation must be 'mean' or 'median', got {aggregation!r}")
    terms = as_word_set(terms)
    table = support_table(windows, terms)
    score, _, _ = kernels.score_table(
        table, len(terms), kernels.UCI, windows.size, 0, aggregation == "median"
    )
    return float(score)


def coherence(
    index: DocumentIndex,
    terms: Sequence[str],
    kind,
    *,
    min_support: int = 10,
    windows: WindowIndex | None = None,
    aggregation: str = "mean",
) -> CoherenceResult:
    """Score ``terms`` with any of the five measures.

    UCI uses ``windows`` (required for that kind); everything else uses the
    document index. For UMass and UCI ``pairs_total`` is the number of word
    pairs and nothing is pruned.
    """
    kind = CoherenceKind(kind)
    if kind.uses_subset_pairs:
        return quantitative_coherence(index, terms, kind, min_support)
    n = len(terms)
    if kind is CoherenceKind.UMASS:
        score = umass_coherence(index, terms)
    else:
        if windows is None:
            raise CoherenceError("uci coherence needs a window index")
        score = uci_coherence(windows, terms, aggregation)
    return CoherenceResult(score, n * (n - 1) // 2, 0)
