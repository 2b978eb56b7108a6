"""Exception types raised by the library.

All of them derive from :class:`CoherenceError`, itself a ``ValueError``, so
callers can catch the whole family at once.
"""


class CoherenceError(ValueError):
    pass


class EmptyCorpusError(CoherenceError):
    def __init__(self):
        super().__init__("empty corpus")


class OutOfVocabularyError(CoherenceError):
    def __init__(self, term):
        self.term = term
        super().__init__(f"out-of-vocabulary term: {term!r}")


class UndefinedConditionalError(CoherenceError):
    """The conditioning term set occurs in no document."""

    def __init__(self):
        super().__init__("undefined conditional")


class WordSetTooSmallError(CoherenceError):
    def __init__(self, size, minimum=2):
        super().__init__(f"word set too small: {size} term(s), need at least {minimum}")


class InsufficientSupportError(CoherenceError):
    """Every subset pair of the word set was pruned, so no score exists."""

    def __init__(self, pairs_total):
        self.pairs_total = pairs_total
        super().__init__(f"insufficient support: all {pairs_total} pairs pruned")


class DegenerateRankingError(CoherenceError):
    def __init__(self):
        super().__init__("degenerate ranking: one input is constant")


class UnequalRaterCountError(CoherenceError):
    def __init__(self, counts):
        self.counts = sorted(set(counts))
        super().__init__(f"unequal rater counts per item: {self.counts}")


class InputFormatError(CoherenceError):
    """A malformed line or row in an input file."""

    def __init__(self, source, line, message):
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")
