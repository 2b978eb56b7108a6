"""Brute-force reference implementations used as test oracles.

Everything works directly on documents as Python sets with exact
``Fraction`` arithmetic and shares no code with ``topiccoh``.
"""
import math
from fractions import Fraction
from itertools import chain, combinations


def docs_from_lines(lines):
    return [set(line.split()) for line in lines if line.split()]


def nonempty_subsets(items):
    items = sorted(items)
    return [frozenset(c) for c in chain.from_iterable(
        combinations(items, k) for k in range(1, len(items) + 1))]


def support(docs, terms):
    return sum(1 for d in docs if set(terms) <= d)


def prob(docs, terms):
    return Fraction(support(docs, terms), len(docs))


def pairs_by_definition(words, kind):
    words = frozenset(words)
    pairs = []
    if kind == "one-all":
        for w in words:
            pairs.append((frozenset([w]), words - {w}))
    elif kind == "one-any":
        for w in words:
            for cond in nonempty_subsets(words - {w}):
                pairs.append((frozenset([w]), cond))
    elif kind == "any-any":
        for conditioned in nonempty_subsets(words):
            if conditioned == words:
                continue
            for cond in nonempty_subsets(words - conditioned):
                pairs.append((conditioned, cond))
    else:
        raise ValueError(kind)
    return pairs


def confirmation(docs, conditioned, condition):
    """Exact ``p(W'|W*) - p(W')`` or None when the condition never occurs."""
    cond = support(docs, condition)
    if cond == 0:
        return None
    return Fraction(support(docs, conditioned | condition), cond) - prob(docs, conditioned)


def quantitative(docs, words, kind, min_support=10):
    """Exact mean confirmation over unpruned pairs, or None if all pruned."""
    values = []
    for conditioned, condition in pairs_by_definition(words, kind):
        if support(docs, condition) <= min_support:
            continue
        d = confirmation(docs, conditioned, condition)
        if d is not None:
            values.append(d)
    if not values:
        return None
    return sum(values, Fraction(0)) / len(values)


def qualitative(docs, words, kind):
    for conditioned, condition in pairs_by_definition(words, kind):
        cond = support(docs, condition)
        if cond == 0:
            return False
        if not Fraction(support(docs, conditioned | condition), cond) > prob(docs, conditioned):
            return False
    return True


def umass(docs, ordered):
    D = len(docs)
    total = 0.0
    for m in range(1, len(ordered)):
        for l in range(m):
            joint = prob(docs, {ordered[m], ordered[l]})
            total += math.log((joint + Fraction(1, D)) / prob(docs, {ordered[l]}))
    return total


def windows_by_definition(lines, size):
    """Window token sets, enumerated directly from the stride-1 definition."""
    out = []
    for line in lines:
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) <= size:
            out.append(set(tokens))
        else:
            out.extend(set(tokens[i:i + size]) for i in range(len(tokens) - size + 1))
    return out


def uci(window_sets, ordered, median=False):
    N = len(window_sets)
    values = []
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            joint = prob(window_sets, {ordered[i], ordered[j]}) + Fraction(1, N)
            denom = prob(window_sets, {ordered[i]}) * prob(window_sets, {ordered[j]})
            values.append(math.log(joint / denom))
    if median:
        values.sort()
        k = len(values) // 2
        return values[k] if len(values) % 2 else (values[k - 1] + values[k]) / 2
    return sum(values) / len(values)


def kendall_counts(xs, ys):
    """Naive O(n^2) pair classification: (concordant, discordant, n0, n1, n2)."""
    n = len(xs)
    concordant = discordant = ties_x = ties_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = (xs[i] > xs[j]) - (xs[i] < xs[j])
            dy = (ys[i] > ys[j]) - (ys[i] < ys[j])
            if dx == 0:
                ties_x += 1
            if dy == 0:
                ties_y += 1
            if dx * dy > 0:
                concordant += 1
            elif dx * dy < 0:
                discordant += 1
    return concordant, discordant, n * (n - 1) // 2, ties_x, ties_y


def kendall_tau_b(xs, ys):
    c, d, n0, n1, n2 = kendall_counts(xs, ys)
    return (c - d) / math.sqrt((n0 - n1) * (n0 - n2))


def fleiss_from_definition(matrix):
    """Fleiss' kappa straight from the textbook definition, in Fractions."""
    rows = [list(map(int, r)) for r in matrix]
    N = len(rows)
    r = sum(rows[0])
    k = len(rows[0])
    P_i = [Fraction(sum(c * (c - 1) for c in row), r * (r - 1)) for row in rows]
    P_bar = sum(P_i, Fraction(0)) / N
    p_j = [Fraction(sum(row[j] for row in rows), N * r) for j in range(k)]
    P_e = sum(p * p for p in p_j)
    if P_e == 1:
        return Fraction(1)
    return (P_bar - P_e) / (1 - P_e)
