"""Generate word sets by growing them to maximize a coherence measure.

Starting from a single seed word, every vocabulary term is tried as an
extension and the ``k`` best extended sets are kept. Each kept set is then
extended the same way on its own, so the search forms a ``k``-ary tree and
yields up to ``k ** (l - 1)`` word sets of length ``l`` per seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .coherence import MAX_TERMS, CoherenceKind, as_word_set, support_table
from .corpus import DocumentIndex, WindowIndex, top_tfidf_terms
from .errors import CoherenceError, OutOfVocabularyError


@dataclass(frozen=True)
class BeamConfig:
    beam_width: int = 3
    target_length: int = 5
    measure: CoherenceKind = CoherenceKind.ONE_ANY
    min_support: int = 10
    seed_count: int = 20
    aggregation: str = "mean"

    def __post_init__(self):
        object.__setattr__(self, "measure", CoherenceKind(self.measure))
        if self.beam_width < 1:
            raise CoherenceError(f"beam_width must be >= 1, got {self.beam_width}")
        if not 2 <= self.target_length <= MAX_TERMS:
            raise CoherenceError(
                f"target_length must be in [2, {MAX_TERMS}], got {self.target_length}"
            )
        if self.seed_count < 1:
            raise CoherenceError(f"seed_count must be >= 1, got {self.seed_count}")
        if self.min_support < 0:
            raise CoherenceError(f"min_support must be >= 0, got {self.min_support}")
        if self.aggregation not in ("mean", "median"):
            raise CoherenceError(f"unknown aggregation {self.aggregation!r}")


@dataclass(frozen=True)
class GeneratedSet:
    terms: tuple[str, ...]
    score: float
    seed: str
    path: tuple[str, ...]


class _ExtensionScorer:
    """Scores every one-term extension of a word set in one kernel call.

    Candidate postings are concatenated once, so each search node costs a
    single pass over the reference index's postings.
    """

    def __init__(self, index: DocumentIndex, measure, min_support: int = 10,
                 windows: WindowIndex | None = None, aggregation: str = "mean"):
        self.measure = CoherenceKind(measure)
        if self.measure is CoherenceKind.UCI:
            if windows is None:
                raise CoherenceError("uci coherence needs a window index")
            self.reference = windows
        else:
            self.reference = index
        self.index = index
        self.min_support = min_support if self.measure.uses_subset_pairs else 0
        self.median = aggregation == "median"
        # terms the reference index cannot score are never candidates
        self.candidates = [t for t in index.vocabulary if t in self.reference]
        postings = [self.reference.postings[t] for t in self.candidates]
        self.offsets = np.zeros(len(postings) + 1, dtype=np.int64)
        np.cumsum([len(p) for p in postings], out=self.offsets[1:])
        self.concatenated = (
            np.concatenate(postings).astype(np.int32, copy=False)
            if postings else np.zeros(0, dtype=np.int32)
        )

    def rank(self, terms: Sequence[str]) -> list[tuple[str, float]]:
        terms = as_word_set(terms, minimum=1)
        if len(terms) + 1 > MAX_TERMS:
            raise CoherenceError(f"cannot extend past {MAX_TERMS} terms")
        for term in terms:
            if term not in self.index:
                raise OutOfVocabularyError(term)
        postings = [self.reference.posting(t) for t in terms]
        masks = kernels.doc_masks(postings, self.reference.size)
        base = support_table(self.reference, terms)
        scores = kernels.score_extensions(
            masks, base, len(terms), self.concatenated, self.offsets,
            self.measure.code, self.reference.size, self.min_support, self.median,
        )
        present = set(terms)
        ranked = [
            (term, float(score))
            for term, score in zip(self.candidates, scores)
            if term not in present and not math.isnan(score)
        ]
        ranked.sort(key=lambda item: (-item[1], item[0]))
        return ranked


def extend_candidates(
    index: DocumentIndex,
    terms: Sequence[str],
    measure,
    min_support: int = 10,
    *,
    windows: WindowIndex | None = None,
    aggregation: str = "mean",
) -> list[tuple[str, float]]:
    """Score ``terms + [v]`` for every vocabulary term ``v`` not in ``terms``.

    Returns ``(v, score)`` best first, ties broken by term. Extensions whose
    subset pairs are all pruned are left out, as are terms the reference
    index (the window index for UCI) does not contain.
    """
    scorer = _ExtensionScorer(index, measure, min_support, windows, aggregation)
    return scorer.rank(terms)


def _grow(scorer: _ExtensionScorer, seed: str, config: BeamConfig) -> list[GeneratedSet]:
    leaves = []
    stack = [((seed,), math.nan)]
    while stack:
        terms, score = stack.pop()
        if len(terms) == config.target_length:
            leaves.append(GeneratedSet(terms, score, seed, terms[1:]))
            continue
        best = scorer.rank(terms)[: config.beam_width]
        stack.extend((terms + (term,), s) for term, s in reversed(best))
    leaves.sort(key=lambda g: (-g.score, " ".join(g.terms)))
    return leaves


def beam_generate(
    index: DocumentIndex,
    seed: str,
    config: BeamConfig = BeamConfig(),
    *,
    windows: WindowIndex | None = None,
) -> list[GeneratedSet]:
    """Grow word sets of ``config.target_length`` terms from ``seed``.

    Branches that run out of candidates before reaching full length are
    dropped, so fewer than ``beam_width ** (target_length - 1)`` sets may come
    back. Output is sorted by score, best first, ties by the joined terms.
    """
    if seed not in index:
        raise OutOfVocabularyError(seed)
    scorer = _ExtensionScorer(index, config.measure, config.min_support, windows,
                              config.aggregation)
    return _grow(scorer, seed, config)


def generate_all(
    index: DocumentIndex,
    config: BeamConfig = BeamConfig(),
    *,
    windows: WindowIndex | None = None,
) -> list[GeneratedSet]:
    """Run :func:`beam_generate` from each of the top TF-IDF terms in turn.

    Results are concatenated seed by seed; duplicate sets reached from
    different seeds are kept.
    """
    if not index.vocabulary:
        raise CoherenceError("empty vocabulary")
    scorer = _ExtensionScorer(index, config.measure, config.min_support, windows,
                              config.aggregation)
    generated = []
    for seed in top_tfidf_terms(index, config.seed_count):
        if seed not in scorer.reference:
            raise OutOfVocabularyError(seed)
        generated.extend(_grow(scorer, seed, config))
    return generated
