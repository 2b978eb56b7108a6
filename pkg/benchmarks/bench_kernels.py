"""Compare the compiled and pure-Python kernels on the hot paths.

    python3 benchmarks/bench_kernels.py [--docs 100000] [--repeat 5]
"""
import argparse
import math
import timeit

import numpy as np

from topiccoh import _pykernels
from topiccoh.kernels import ANY_ANY, ONE_ANY

try:
    from topiccoh import _ckernels
except ImportError:
    _ckernels = None


def make_postings(rng, n_terms, n_docs, p):
    return [np.flatnonzero(rng.random(n_docs) < p).astype(np.int32) for _ in range(n_terms)]


def cases(n_docs, rng):
    words = make_postings(rng, 5, n_docs, 0.3)
    cands = make_postings(rng, 40, n_docs, 0.3)
    flat = np.concatenate(cands)
    offsets = np.concatenate(([0], np.cumsum([len(c) for c in cands]))).astype(np.int64)
    base4 = words[:4]

    def support(impl):
        return impl.superset_sums(impl.mask_histogram(words, n_docs))

    table = _pykernels.superset_sums(_pykernels.mask_histogram(words, n_docs))
    masks = _pykernels.doc_masks(base4, n_docs)
    base = _pykernels.superset_sums(_pykernels.mask_histogram(base4, n_docs))
    return {
        "support table (5 terms)": support,
        "score any-any (180 pairs)":
            lambda impl: impl.score_table(table, 5, ANY_ANY, n_docs, 10, False),
        "extend 4 -> 5, 40 candidates, one-any":
            lambda impl: impl.score_extensions(masks, base, 4, flat, offsets, ONE_ANY,
                                               n_docs, 10, False),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--docs", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    impls = [("python", _pykernels)]
    if _ckernels is not None:
        impls.append(("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the fallback only")

    print(f"{'kernel':40s}" + "".join(f"{name:>12s}" for name, _ in impls) + f"{'speedup':>10s}")
    for label, fn in cases(args.docs, rng).items():
        results = [fn(impl) for _, impl in impls]
        if len(results) == 2:
            a, b = results
            same = (np.array_equal(a, b) if isinstance(a, np.ndarray)
                    else all(x == y or (math.isnan(x) and math.isnan(y)) for x, y in zip(a, b)))
            assert same, f"backends disagree on {label}"
        times = []
        for _, impl in impls:
            number = 3
            best = min(timeit.repeat(lambda: fn(impl), number=number, repeat=args.repeat)) / number
            times.append(best)
        line = f"{label:40s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
