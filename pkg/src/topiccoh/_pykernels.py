"""Pure-Python kernels, used when the compiled ``_ckernels`` are unavailable.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same floating-point operation order, so both backends return
bit-identical results.

A word set of ``n`` terms is handled through its *support table*: an
``int64`` array of length ``2**n`` whose entry at bitmask ``S`` counts the
documents containing every term whose bit is set in ``S``. Bit ``i`` stands
for the ``i``-th term of the ordered word set, and ``support[0]`` is the
document count.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

ONE_ALL, ONE_ANY, ANY_ANY, UMASS, UCI = range(5)


def doc_masks(postings, size):
    """Per-document bitmask of which word-set terms it contains."""
    masks = np.zeros(size, dtype=np.uint32)
    for bit, posting in enumerate(postings):
        masks[posting] |= np.uint32(1 << bit)
    return masks


def mask_histogram(postings, size):
    """Count documents by the exact subset of terms they contain."""
    masks = doc_masks(postings, size)
    return np.bincount(masks, minlength=1 << len(postings)).astype(np.int64)


def superset_sums(hist):
    """Turn an exact-mask histogram into per-mask supports (zeta transform)."""
    table = np.array(hist, dtype=np.int64)
    n = table.size.bit_length() - 1
    for bit in range(n):
        view = table.reshape(-1, 2, 1 << bit)
        view[:, 0, :] += view[:, 1, :]
    return table


def _submasks_ascending(mask):
    sub = 0
    while True:
        sub = ((sub | ~mask) + 1) & mask
        if sub == 0:
            return
        yield sub


@lru_cache(maxsize=64)
def subset_pair_masks(n, kind):
    """``(conditioned, condition)`` bitmask pairs in canonical order.

    Conditioned masks ascend; for each, condition masks ascend over the
    non-empty subsets of the complement.
    """
    full = (1 << n) - 1
    pairs = []
    if kind == ONE_ALL:
        for i in range(n):
            pairs.append((1 << i, full ^ (1 << i)))
    elif kind == ONE_ANY:
        for i in range(n):
            pairs.extend((1 << i, c) for c in _submasks_ascending(full ^ (1 << i)))
    elif kind == ANY_ANY:
        for w in range(1, full):
            pairs.extend((w, c) for c in _submasks_ascending(full ^ w))
    else:
        raise ValueError(f"no subset pairs for kind code {kind}")
    return tuple(pairs)


def _confirmation_mean(support, n, kind, size, min_support):
    total = 0.0
    valid = 0
    pairs = subset_pair_masks(n, kind)
    for w, c in pairs:
        cond = int(support[c])
        if cond == 0 or cond <= min_support:
            continue
        total += int(support[w | c]) / cond - int(support[w]) / size
        valid += 1
    score = total / valid if valid else math.nan
    return score, len(pairs), len(pairs) - valid


def _umass(support, n):
    total = 0.0
    for m in range(1, n):
        for l in range(m):
            total += math.log((int(support[(1 << m) | (1 << l)]) + 1) / int(support[1 << l]))
    return total


def _uci(support, n, size, median):
    values = []
    for i in range(n):
        for j in range(i + 1, n):
            joint = float(int(support[(1 << i) | (1 << j)]) + 1) * size
            values.append(math.log(joint / (float(int(support[1 << i])) * int(support[1 << j]))))
    if median:
        values.sort()
        k = len(values) // 2
        return values[k] if len(values) % 2 else (values[k - 1] + values[k]) / 2.0
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def score_table(support, n, kind, size, min_support, median):
    """Score one support table.

    Returns ``(score, pairs_total, pairs_pruned)``; ``score`` is NaN when every
    pair was pruned. Pruning only applies to the subset-pair kinds.
    """
    if kind in (ONE_ALL, ONE_ANY, ANY_ANY):
        return _confirmation_mean(support, n, kind, size, min_support)
    pairs = n * (n - 1) // 2
    if kind == UMASS:
        return _umass(support, n), pairs, 0
    if kind == UCI:
        return _uci(support, n, size, median), pairs, 0
    raise ValueError(f"unknown kind code {kind}")


def qualitative_table(support, n, kind, size):
    """True iff every pair has ``p(W'|W*) > p(W')``, compared exactly."""
    for w, c in subset_pair_masks(n, kind):
        cond = int(support[c])
        if cond == 0 or int(support[w | c]) * size <= int(support[w]) * cond:
            return False
    return True


def score_extensions(masks, base_support, n, cand_postings, cand_offsets, kind, size,
                     min_support, median):
    """Score the word set extended by each candidate term (appended last).

    ``masks`` are the word set's per-document bitmasks, ``base_support`` its
    support table, and candidate ``j`` has posting
    ``cand_postings[cand_offsets[j]:cand_offsets[j + 1]]``.
    """
    width = 1 << n
    m = len(cand_offsets) - 1
    scores = np.empty(m, dtype=np.float64)
    table = np.empty(2 * width, dtype=np.int64)
    table[:width] = base_support
    for j in range(m):
        posting = cand_postings[cand_offsets[j]:cand_offsets[j + 1]]
        hist = np.bincount(masks[posting], minlength=width)
        table[width:] = superset_sums(hist)
        scores[j] = score_table(table, n + 1, kind, size, min_support, median)[0]
    return scores
