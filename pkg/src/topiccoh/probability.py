"""Word-set probabilities under the boolean document (or window) model.

``p(W)`` is the fraction of documents containing every term of ``W``. Counts
are intersected as integers and divided only at the end. The same functions
accept a :class:`~topiccoh.corpus.WindowIndex`, where windows play the role
of documents.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .corpus import _OccurrenceIndex
from .errors import CoherenceError, UndefinedConditionalError


def _postings(index: _OccurrenceIndex, terms: Iterable[str]) -> list[np.ndarray]:
    return [index.posting(t) for t in dict.fromkeys(terms)]


def joint_support(index: _OccurrenceIndex, terms: Iterable[str]) -> int:
    """Number of documents containing all ``terms``; the empty set gives ``D``."""
    postings = sorted(_postings(index, terms), key=len)
    if not postings:
        return index.size
    common = postings[0]
    for posting in postings[1:]:
        if not len(common):
            break
        common = np.intersect1d(common, posting, assume_unique=True)
    return int(len(common))


def joint_probability(index: _OccurrenceIndex, terms: Iterable[str]) -> float:
    return joint_support(index, terms) / index.size


def conditional_probability(
    index: _OccurrenceIndex, conditioned: Iterable[str], condition: Iterable[str]
) -> tuple[float, int]:
    """Return ``(p(conditioned | condition), support of condition)``.

    Raises :class:`UndefinedConditionalError` when no document contains the
    condition.
    """
    conditioned = set(conditioned)
    condition = set(condition)
    if not conditioned or not condition:
        raise CoherenceError("conditioned and condition term sets must be non-empty")
    if conditioned & condition:
        raise CoherenceError(f"term sets overlap: {sorted(conditioned & condition)}")
    cond_support = joint_support(index, condition)
    if cond_support == 0:
        # still validate the conditioned terms so OOV errors are not masked
        _postings(index, conditioned)
        raise UndefinedConditionalError()
    return joint_support(index, conditioned | condition) / cond_support, cond_support
