"""Topic coherence over word sets.

Five measures are provided: the subset-pair coherences ``one-all``,
``one-any`` and ``any-any`` (difference confirmation, boolean document
model), UMass, and UCI (PMI over sliding windows). Word sets can also be
generated by beam search on any of them, and scored against human ratings.

>>> from topiccoh import ingest_corpus, quantitative_coherence
>>> idx = ingest_corpus(["a b c", "a b", "a c", "b c"])
>>> quantitative_coherence(idx, ["a", "b", "c"], "one-all", min_support=0).score
-0.25
"""
from .coherence import (
    MAX_TERMS,
    CoherenceKind,
    CoherenceResult,
    SubsetPair,
    coherence,
    difference_confirmation,
    qualitative_coherence,
    quantitative_coherence,
    subset_pairs,
    support_table,
    uci_coherence,
    umass_coherence,
)
from .corpus import (
    CorpusConfig,
    DocumentIndex,
    WindowIndex,
    build_window_index,
    filter_vocabulary,
    ingest_corpus,
    read_corpus,
    top_tfidf_terms,
)
from .errors import (
    CoherenceError,
    DegenerateRankingError,
    EmptyCorpusError,
    InputFormatError,
    InsufficientSupportError,
    OutOfVocabularyError,
    UndefinedConditionalError,
    UnequalRaterCountError,
    WordSetTooSmallError,
)
from .kernels import BACKEND
from .probability import conditional_probability, joint_probability, joint_support
from .rating import (
    Label,
    Rating,
    RatingTable,
    average_rating,
    fleiss_kappa,
    kendall_tau,
    label_breakdown,
    majority_label,
    read_ratings,
)
from .search import BeamConfig, GeneratedSet, beam_generate, extend_candidates, generate_all

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "MAX_TERMS", "BeamConfig", "CoherenceError", "CoherenceKind",
    "CoherenceResult", "CorpusConfig", "DegenerateRankingError", "DocumentIndex",
    "EmptyCorpusError", "GeneratedSet", "InputFormatError", "InsufficientSupportError",
    "Label", "OutOfVocabularyError", "Rating", "RatingTable", "SubsetPair",
    "UndefinedConditionalError", "UnequalRaterCountError", "WindowIndex",
    "WordSetTooSmallError", "average_rating", "beam_generate", "build_window_index",
    "coherence", "conditional_probability", "difference_confirmation",
    "extend_candidates", "filter_vocabulary", "fleiss_kappa", "generate_all",
    "ingest_corpus", "joint_probability", "joint_support", "kendall_tau",
    "label_breakdown", "majority_label", "qualitative_coherence",
    "quantitative_coherence", "read_corpus", "read_ratings", "subset_pairs",
    "support_table", "top_tfidf_terms", "uci_coherence", "umass_coherence",
]
