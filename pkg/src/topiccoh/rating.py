"""Human ratings: aggregation, inter-rater agreement, rank correlation.

Word sets are rated ``good`` (all words related), ``neutral`` (three or four
related) or ``bad`` (at most two related), mapped to 2, 1 and 0.
"""
from __future__ import annotations

import csv
import math
import random
import statistics
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CoherenceError,
    DegenerateRankingError,
    InputFormatError,
    UnequalRaterCountError,
)


class Label(IntEnum):
    BAD = 0
    NEUTRAL = 1
    GOOD = 2

    @classmethod
    def parse(cls, text: str) -> "Label":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown label {text!r}; expected good, neutral or bad") from None

    def __str__(self):
        return self.name.lower()


#: Column order of count matrices and breakdowns.
LABELS = (Label.GOOD, Label.NEUTRAL, Label.BAD)


@dataclass(frozen=True)
class Rating:
    set_id: str
    rater_id: str
    label: Label


class RatingTable:
    """Ratings grouped by word set, in order of first appearance."""

    def __init__(self, ratings: Iterable[Rating]):
        self._items: dict[str, dict[str, Label]] = {}
        for r in ratings:
            raters = self._items.setdefault(r.set_id, {})
            if r.rater_id in raters:
                raise CoherenceError(f"rater {r.rater_id!r} rated set {r.set_id!r} twice")
            raters[r.rater_id] = Label(r.label)

    @property
    def set_ids(self) -> list[str]:
        return list(self._items)

    def labels(self, set_id: str) -> list[Label]:
        return list(self._items[set_id].values())

    def __len__(self):
        return len(self._items)

    def __contains__(self, set_id):
        return set_id in self._items

    def rater_counts(self) -> list[int]:
        return [len(raters) for raters in self._items.values()]

    def counts(self) -> np.ndarray:
        """Item-by-category count matrix, columns ordered good/neutral/bad."""
        out = np.zeros((len(self._items), len(LABELS)), dtype=np.int64)
        for i, raters in enumerate(self._items.values()):
            c = Counter(raters.values())
            out[i] = [c[label] for label in LABELS]
        return out

    def equalized(self, seed: int = 0) -> "RatingTable":
        """Downsample every item to the smallest per-item rater count."""
        if not self._items:
            return RatingTable([])
        keep = min(self.rater_counts())
        rng = random.Random(seed)
        ratings = []
        for set_id, raters in self._items.items():
            chosen = sorted(rng.sample(sorted(raters), keep)) if len(raters) > keep else sorted(raters)
            ratings.extend(Rating(set_id, rid, raters[rid]) for rid in chosen)
        return RatingTable(ratings)


def read_ratings(path: str | Path) -> RatingTable:
    """Read a ``set_id,rater_id,label`` CSV (header required)."""
    ratings = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"set_id", "rater_id", "label"} - set(reader.fieldnames or ())
        if missing:
            raise InputFormatError(path, 1, f"missing columns: {', '.join(sorted(missing))}")
        for row in reader:
            line = reader.line_num
            set_id, rater_id, label = row["set_id"], row["rater_id"], row["label"]
            if not set_id or not rater_id or not label:
                raise InputFormatError(path, line, "empty set_id, rater_id or label")
            try:
                ratings.append(Rating(set_id.strip(), rater_id.strip(), Label.parse(label)))
            except ValueError as exc:
                raise InputFormatError(path, line, str(exc)) from None
    try:
        return RatingTable(ratings)
    except CoherenceError as exc:
        raise InputFormatError(path, "-", str(exc)) from None


def average_rating(labels: Sequence[Label]) -> float:
    if not labels:
        raise CoherenceError("no ratings")
    return sum(int(label) for label in labels) / len(labels)


def majority_label(labels: Sequence[Label]) -> Label:
    """Label with the most votes.

    On a tie, the tied label nearest the median rating wins; if two tied
    labels are equally near, the one nearer ``neutral`` wins, and between
    ``good`` and ``bad`` the result is ``bad``.
    """
    if not labels:
        raise CoherenceError("no ratings")
    votes = Counter(Label(label) for label in labels)
    top = max(votes.values())
    tied = [label for label, v in votes.items() if v == top]
    if len(tied) == 1:
        return tied[0]
    median = statistics.median(int(label) for label in labels)
    return min(tied, key=lambda label: (abs(label - median), abs(label - 1), label))


def fleiss_kappa(table: RatingTable | np.ndarray) -> float:
    """Fleiss' kappa over items rated by the same number of raters.

    Accepts a :class:`RatingTable` or an item-by-category count matrix.
    Computed in exact rational arithmetic; returns 1.0 when all ratings fall
    in one category (expected agreement of 1).
    """
    counts = table.counts() if isinstance(table, RatingTable) else np.asarray(table)
    if counts.ndim != 2 or counts.shape[0] == 0:
        raise CoherenceError("need a non-empty item-by-category count matrix")
    per_item = counts.sum(axis=1)
    if len(set(per_item.tolist())) != 1:
        raise UnequalRaterCountError(per_item.tolist())
    raters = int(per_item[0])
    if raters < 2:
        raise CoherenceError(f"need at least 2 raters per item, got {raters}")
    items = counts.shape[0]
    total = items * raters
    agreement = Fraction(int((counts.astype(object) ** 2).sum()) - total, total * (raters - 1))
    expected = Fraction(sum(int(c) ** 2 for c in counts.sum(axis=0)), total * total)
    if expected == 1:
        return 1.0
    return float((agreement - expected) / (1 - expected))


def _tie_pairs(sorted_values) -> int:
    pairs = 0
    run = 1
    for prev, cur in zip(sorted_values, sorted_values[1:]):
        if cur == prev:
            run += 1
        else:
            pairs += run * (run - 1) // 2
            run = 1
    return pairs + run * (run - 1) // 2


def _count_inversions(values: list) -> int:
    """Strict inversions (``i < j`` with ``values[i] > values[j]``), merge-sort."""
    n = len(values)
    buf = list(values)
    swaps = 0
    width = 1
    while width < n:
        merged = []
        for lo in range(0, n, 2 * width):
            left = buf[lo:lo + width]
            right = buf[lo + width:lo + 2 * width]
            i = j = 0
            while i < len(left) and j < len(right):
                if right[j] < left[i]:
                    merged.append(right[j])
                    swaps += len(left) - i
                    j += 1
                else:
                    merged.append(left[i])
                    i += 1
            merged.extend(left[i:])
            merged.extend(right[j:])
        buf = merged
        width *= 2
    return swaps


def kendall_tau(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Kendall's tau-b, computed in ``O(n log n)`` (Knight's method).

    Raises :class:`DegenerateRankingError` if either input is constant.
    """
    if len(xs) != len(ys):
        raise CoherenceError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise CoherenceError("need at least 2 observations")
    pairs = sorted(zip(xs, ys))
    total = n * (n - 1) // 2
    ties_x = _tie_pairs([x for x, _ in pairs])
    ties_xy = _tie_pairs(pairs)
    y_order = [y for _, y in pairs]
    discordant = _count_inversions(y_order)
    ties_y = _tie_pairs(sorted(y_order))
    if total == ties_x or total == ties_y:
        raise DegenerateRankingError()
    # concordant - discordant over pairs untied in both inputs
    numerator = total - ties_x - ties_y + ties_xy - 2 * discordant
    return numerator / math.sqrt((total - ties_x) * (total - ties_y))


def label_breakdown(table: RatingTable) -> dict[Label, float]:
    """Percentage of items whose majority label is good/neutral/bad."""
    majorities = Counter(majority_label(table.labels(s)) for s in table.set_ids)
    n = len(table)
    return {label: 100.0 * majorities[label] / n if n else 0.0 for label in LABELS}
