"""Acceptance suite; a per-criterion summary is printed at the end of the run."""
import io
import math
import random
import time
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

import oracles
from corpora import random_instance, synthetic_lines
from topiccoh import (
    BeamConfig,
    InsufficientSupportError,
    coherence,
    extend_candidates,
    fleiss_kappa,
    ingest_corpus,
    kendall_tau,
    qualitative_coherence,
    quantitative_coherence,
    subset_pairs,
    umass_coherence,
)
from topiccoh.cli import main

SUBSET_KINDS = ("one-all", "one-any", "any-any")


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@criterion(1, "oracle equivalence on 200 random instances")
def test_oracle_equivalence():
    rng = random.Random(1)
    start = time.perf_counter()
    compared = 0
    for _ in range(200):
        lines, words = random_instance(rng)
        idx = ingest_corpus(lines)
        docs = oracles.docs_from_lines(lines)
        for kind in SUBSET_KINDS:
            want = oracles.quantitative(docs, words, kind, min_support=0)
            if want is None:
                with pytest.raises(InsufficientSupportError):
                    quantitative_coherence(idx, words, kind, min_support=0)
                continue
            got = quantitative_coherence(idx, words, kind, min_support=0).score
            assert abs(got - float(want)) <= 1e-12
            compared += 1
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {compared} scores compared in {elapsed:.2f}s")
    assert compared >= 500
    assert elapsed < 10


@criterion(2, "subset-pair counts follow the closed forms")
@pytest.mark.parametrize("n", range(2, 9))
def test_pair_counts(n):
    words = [f"t{i}" for i in range(n)]
    counts = {kind: len(subset_pairs(words, kind)) for kind in SUBSET_KINDS}
    assert counts == {
        "one-all": n,
        "one-any": n * (2 ** (n - 1) - 1),
        "any-any": 3 ** n - 2 ** (n + 1) + 1,
    }
    if n == 5:
        assert tuple(counts.values()) == (5, 75, 180)
    if n <= 5:
        for kind in SUBSET_KINDS:
            got = {(p.conditioned, p.condition) for p in subset_pairs(words, kind)}
            assert got == set(oracles.pairs_by_definition(words, kind))


@criterion(3, "qualitative hierarchy any-any => one-any => one-all, with separations")
def test_qualitative_hierarchy():
    rng = random.Random(20131205)
    start = time.perf_counter()
    separations = {"one-all/one-any": 0, "one-any/any-any": 0}
    for _ in range(500):
        lines, words = random_instance(rng)
        idx = ingest_corpus(lines)
        docs = oracles.docs_from_lines(lines)
        holds = {kind: qualitative_coherence(idx, words, kind) for kind in SUBSET_KINDS}
        for kind in SUBSET_KINDS:
            assert holds[kind] == oracles.qualitative(docs, words, kind)
        if holds["any-any"]:
            assert holds["one-any"]
        if holds["one-any"]:
            assert holds["one-all"]
        separations["one-all/one-any"] += holds["one-all"] and not holds["one-any"]
        separations["one-any/any-any"] += holds["one-any"] and not holds["any-any"]
    elapsed = time.perf_counter() - start
    print(f"criterion 3: separations {separations} in {elapsed:.2f}s")
    assert all(v >= 1 for v in separations.values())
    assert elapsed < 10


@criterion(4, "hand-verified values on the 4-document corpus")
def test_toy_fixture(toy_index):
    terms = ["a", "b", "c"]
    want = {"one-all": -0.25, "one-any": -5 / 36, "any-any": -7 / 48}
    for kind, value in want.items():
        assert abs(coherence(toy_index, terms, kind, min_support=0).score - value) <= 1e-12
    assert abs(umass_coherence(toy_index, terms) - 0.0) <= 1e-12


@criterion(5, "UMass regression equals ln(2/3)")
def test_umass_regression():
    idx = ingest_corpus(["a b", "a", "a", "b"])
    assert abs(umass_coherence(idx, ["a", "b"]) - math.log(2 / 3)) <= 1e-12


def _tied(rng, n):
    pool = [rng.randint(0, 8) / 4 for _ in range(rng.randint(2, 10))]
    return [rng.choice(pool) for _ in range(n)]


@criterion(6, "Kendall tau-b and Fleiss kappa against oracles")
def test_statistics_oracles():
    rng = random.Random(6)
    checked = 0
    while checked < 100:
        n = rng.randint(2, 200)
        xs, ys = _tied(rng, n), _tied(rng, n)
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            continue
        assert kendall_tau(xs, ys) == oracles.kendall_tau_b(xs, ys)
        checked += 1
    for _ in range(200):
        items, raters = rng.randint(1, 20), rng.randint(2, 6)
        matrix = np.zeros((items, 3), dtype=np.int64)
        for row in matrix:
            for _ in range(raters):
                row[rng.randrange(3)] += 1
        want = float(oracles.fleiss_from_definition(matrix))
        assert abs(fleiss_kappa(matrix) - want) <= 1e-12
    assert kendall_tau([1, 2, 3], [3, 1, 2]) == -1 / 3
    assert fleiss_kappa(np.array([[2, 1, 0], [0, 2, 1]])) == float(Fraction(-1, 11))


@pytest.fixture(scope="module")
def beam_corpus(tmp_path_factory):
    lines = synthetic_lines(n_docs=1000, n_terms=40, p=0.45, seed=7)
    path = tmp_path_factory.mktemp("beam") / "corpus.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path, ingest_corpus(lines)


@criterion(7, "beam arithmetic: 1620 rows, exact scores, branch-local optimality")
def test_beam_arithmetic(beam_corpus):
    path, idx = beam_corpus
    code, out, _ = run_cli("generate", "--corpus", path, "--beam", 3, "--length", 5, "--seeds", 20)
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert len(rows) == 1620
    code, greedy, _ = run_cli("generate", "--corpus", path, "--beam", 1, "--length", 5,
                              "--seeds", 20)
    assert code == 0 and len(greedy.splitlines()) == 20

    config = BeamConfig()

    @lru_cache(maxsize=None)
    def ranked(prefix):
        return extend_candidates(idx, list(prefix), config.measure, config.min_support)

    for seed, score, text in rows:
        terms = tuple(text.split())
        assert terms[0] == seed and len(set(terms)) == 5
        result = coherence(idx, terms, config.measure, min_support=config.min_support)
        assert score == f"{result.score:.6f}"
        for depth in range(1, 5):
            options = ranked(terms[:depth])
            assert len(options) >= 10
            assert terms[depth] in [t for t, _ in options[: config.beam_width]]
        assert dict(ranked(terms[:4]))[terms[4]] == result.score


PRUNE_LINES = ["x y"] * 3 + ["y"] * 8 + ["x"] * 2 + ["z"] * 17


@criterion(8, "prune semantics: single surviving pair and insufficient support")
def test_prune_semantics(tmp_path):
    idx = ingest_corpus(PRUNE_LINES)
    result = coherence(idx, ["x", "y"], "one-all")
    # only p(x|y) - p(x) survives: s(y) = 11 > 10, s(x) = 5
    assert result.score == pytest.approx(float(Fraction(3, 11) - Fraction(5, 30)), abs=1e-15)
    assert (result.pairs_total, result.pairs_pruned) == (2, 1)

    # s(y) = 10 sits on the threshold and is pruned, leaving nothing
    starved = ingest_corpus(["x y"] * 3 + ["y"] * 7 + ["x"] * 2 + ["z"] * 18)
    with pytest.raises(InsufficientSupportError):
        coherence(starved, ["x", "y"], "one-all")

    for lines, row in [(PRUNE_LINES, f"1\tone-all\t{float(Fraction(3, 11) - Fraction(1, 6)):.6f}\t2\t1"),
                       (["x y"] * 3 + ["y"] * 7 + ["x"] * 2 + ["z"] * 18, "1\tone-all\tNA\t2\t2")]:
        corpus = tmp_path / "c.txt"
        corpus.write_text("\n".join(lines) + "\n", encoding="utf-8")
        sets = tmp_path / "s.txt"
        sets.write_text("x y\n", encoding="utf-8")
        code, out, err = run_cli("score", "--corpus", corpus, "--min-df", 0, "--max-df", 1,
                                 "--measure", "one-all", sets)
        assert code == 0
        assert out == row + "\n"
        assert ("NA" in row) == ("insufficient support" in err)


@criterion(9, "deterministic end-to-end runs and 100k-document throughput")
def test_determinism_and_throughput(beam_corpus, tmp_path):
    path, _ = beam_corpus
    sets = tmp_path / "sets.txt"
    first = run_cli("generate", "--corpus", path, "--beam", 2, "--length", 5, "--seeds", 5,
                    "--sample", 10, "--rng-seed", 3)
    sets.write_text("".join(line.split("\t")[2] + "\n" for line in first[1].splitlines()))
    scored = [run_cli("score", "--corpus", path, "--measure", m, sets)
              for m in ("one-all", "any-any", "umass", "uci")]
    assert first == run_cli("generate", "--corpus", path, "--beam", 2, "--length", 5,
                            "--seeds", 5, "--sample", 10, "--rng-seed", 3)
    assert scored == [run_cli("score", "--corpus", path, "--measure", m, sets)
                      for m in ("one-all", "any-any", "umass", "uci")]
    assert all(code == 0 and out for code, out, _ in scored)

    lines = synthetic_lines(n_docs=100_000, n_terms=30, p=0.3, seed=9)
    idx = ingest_corpus(lines)
    rng = random.Random(9)
    word_sets = [rng.sample(idx.vocabulary, 5) for _ in range(100)]
    start = time.perf_counter()
    results = [coherence(idx, ws, "any-any") for ws in word_sets]
    elapsed = time.perf_counter() - start
    print(f"criterion 9: 100 any-any sets over 100k documents in {elapsed:.3f}s")
    assert all(r.pairs_total == 180 for r in results)
    assert elapsed < 5
