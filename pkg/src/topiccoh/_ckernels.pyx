# cython: language_level=3
"""Compiled twins of the kernels in ``_pykernels``.

Signatures, pair order and floating-point operation order match the Python
versions exactly; see that module for the support-table conventions.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, NAN
from libc.stdlib cimport malloc, free, qsort
from libc.string cimport memset, memcpy
from libc.stdint cimport int32_t, int64_t, uint32_t

cnp.import_array()

cdef enum:
    ONE_ALL = 0
    ONE_ANY = 1
    ANY_ANY = 2
    UMASS = 3
    UCI = 4


cdef inline int _check_kind(int kind) except -1:
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown kind code {kind}")
    return 0


def doc_masks(postings, Py_ssize_t size):
    cdef cnp.ndarray[uint32_t, ndim=1] out = np.zeros(size, dtype=np.uint32)
    cdef uint32_t[::1] masks = out
    cdef const int32_t[::1] p
    cdef Py_ssize_t i
    cdef uint32_t bit
    for b, posting in enumerate(postings):
        p = np.ascontiguousarray(posting, dtype=np.int32)
        bit = (<uint32_t>1) << b
        for i in range(p.shape[0]):
            masks[p[i]] |= bit
    return out


def mask_histogram(postings, Py_ssize_t size):
    cdef int n = len(postings)
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(1 << n, dtype=np.int64)
    cdef int64_t[::1] hist = out
    cdef uint32_t* masks = <uint32_t*> malloc(size * sizeof(uint32_t) if size > 0 else 1)
    cdef const int32_t[::1] p
    cdef Py_ssize_t i, d
    cdef int64_t touched = 0
    cdef uint32_t bit
    if masks == NULL:
        raise MemoryError()
    try:
        memset(masks, 0, size * sizeof(uint32_t))
        arrays = [np.ascontiguousarray(x, dtype=np.int32) for x in postings]
        for b in range(n):
            p = arrays[b]
            bit = (<uint32_t>1) << b
            for i in range(p.shape[0]):
                masks[p[i]] |= bit
        # second pass counts each touched document once and resets it
        for b in range(n):
            p = arrays[b]
            for i in range(p.shape[0]):
                d = p[i]
                if masks[d] != 0:
                    hist[masks[d]] += 1
                    touched += 1
                    masks[d] = 0
        hist[0] = size - touched
    finally:
        free(masks)
    return out


cdef void _zeta(int64_t* table, int n) noexcept nogil:
    cdef Py_ssize_t width = (<Py_ssize_t>1) << n
    cdef Py_ssize_t s
    cdef int bit
    cdef Py_ssize_t step
    for bit in range(n):
        step = (<Py_ssize_t>1) << bit
        for s in range(width):
            if not (s & step):
                table[s] += table[s | step]


def superset_sums(hist):
    cdef cnp.ndarray[int64_t, ndim=1] out = np.array(hist, dtype=np.int64)
    cdef int64_t[::1] t = out
    cdef int n = (<object>out.size).bit_length() - 1
    _zeta(&t[0], n)
    return out


cdef inline Py_ssize_t _next_submask(Py_ssize_t sub, Py_ssize_t mask) noexcept nogil:
    return ((sub | ~mask) + 1) & mask


cdef int _cmp_double(const void* a, const void* b) noexcept nogil:
    cdef double x = (<const double*>a)[0]
    cdef double y = (<const double*>b)[0]
    return (x > y) - (x < y)


cdef inline bint _prunable(int64_t cond, int64_t min_support) noexcept nogil:
    return cond == 0 or cond <= min_support


cdef double _confirmation_mean(const int64_t* sup, int n, int kind, int64_t size,
                               int64_t min_support, int64_t* total_out,
                               int64_t* pruned_out) noexcept nogil:
    cdef Py_ssize_t full = ((<Py_ssize_t>1) << n) - 1
    cdef Py_ssize_t w, c, comp
    cdef int i
    cdef double total = 0.0
    cdef int64_t valid = 0, pairs = 0, cond
    if kind == ONE_ALL:
        for i in range(n):
            w = (<Py_ssize_t>1) << i
            c = full ^ w
            pairs += 1
            cond = sup[c]
            if _prunable(cond, min_support):
                continue
            total += <double>sup[w | c] / <double>cond - <double>sup[w] / <double>size
            valid += 1
    else:
        w = 1
        while w < full:
            if kind == ONE_ANY and (w & (w - 1)) != 0:
                w += 1
                continue
            comp = full ^ w
            c = _next_submask(0, comp)
            while c != 0:
                pairs += 1
                cond = sup[c]
                if not _prunable(cond, min_support):
                    total += <double>sup[w | c] / <double>cond - <double>sup[w] / <double>size
                    valid += 1
                c = _next_submask(c, comp)
            w += 1
    total_out[0] = pairs
    pruned_out[0] = pairs - valid
    if valid == 0:
        return NAN
    return total / <double>valid


cdef double _umass(const int64_t* sup, int n) noexcept nogil:
    cdef double total = 0.0
    cdef int m, l
    for m in range(1, n):
        for l in range(m):
            total += log(<double>(sup[(1 << m) | (1 << l)] + 1) / <double>sup[1 << l])
    return total


cdef double _uci(const int64_t* sup, int n, int64_t size, bint median, double* buf) noexcept nogil:
    cdef int i, j, k = 0
    cdef double joint, total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            joint = <double>(sup[(1 << i) | (1 << j)] + 1) * <double>size
            buf[k] = log(joint / (<double>sup[1 << i] * <double>sup[1 << j]))
            k += 1
    if median:
        qsort(buf, k, sizeof(double), _cmp_double)
        if k % 2:
            return buf[k // 2]
        return (buf[k // 2 - 1] + buf[k // 2]) / 2.0
    for i in range(k):
        total += buf[i]
    return total / <double>k


cdef double _score(const int64_t* sup, int n, int kind, int64_t size, int64_t min_support,
                   bint median, double* buf, int64_t* total_out, int64_t* pruned_out) noexcept nogil:
    if kind == UMASS:
        total_out[0] = n * (n - 1) // 2
        pruned_out[0] = 0
        return _umass(sup, n)
    if kind == UCI:
        total_out[0] = n * (n - 1) // 2
        pruned_out[0] = 0
        return _uci(sup, n, size, median, buf)
    return _confirmation_mean(sup, n, kind, size, min_support, total_out, pruned_out)


def score_table(support, int n, int kind, int64_t size, int64_t min_support, bint median):
    _check_kind(kind)
    cdef const int64_t[::1] sup = np.ascontiguousarray(support, dtype=np.int64)
    cdef int64_t total = 0, pruned = 0
    cdef double score
    cdef double* buf = <double*> malloc((n * (n - 1) // 2 + 1) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        score = _score(&sup[0], n, kind, size, min_support, median, buf, &total, &pruned)
    finally:
        free(buf)
    return score, total, pruned


def qualitative_table(support, int n, int kind, int64_t size):
    if kind not in (ONE_ALL, ONE_ANY, ANY_ANY):
        raise ValueError(f"no subset pairs for kind code {kind}")
    cdef const int64_t[::1] sup = np.ascontiguousarray(support, dtype=np.int64)
    cdef Py_ssize_t full = ((<Py_ssize_t>1) << n) - 1
    cdef Py_ssize_t w, c, comp
    cdef int64_t cond
    w = 1
    while w < full:
        if kind != ANY_ANY and (w & (w - 1)) != 0:
            w += 1
            continue
        comp = full ^ w
        if kind == ONE_ALL:
            c = comp
        else:
            c = _next_submask(0, comp)
        while c != 0:
            cond = sup[c]
            # both products are bounded by size**2 < 2**63
            if cond == 0 or sup[w | c] * size <= sup[w] * cond:
                return False
            if kind == ONE_ALL:
                break
            c = _next_submask(c, comp)
        w += 1
    return True


def score_extensions(masks, base_support, int n, cand_postings, cand_offsets, int kind,
                     int64_t size, int64_t min_support, bint median):
    _check_kind(kind)
    cdef const uint32_t[::1] mk = np.ascontiguousarray(masks, dtype=np.uint32)
    cdef const int64_t[::1] base = np.ascontiguousarray(base_support, dtype=np.int64)
    cdef const int32_t[::1] post = np.ascontiguousarray(cand_postings, dtype=np.int32)
    cdef const int64_t[::1] offs = np.ascontiguousarray(cand_offsets, dtype=np.int64)
    cdef Py_ssize_t width = (<Py_ssize_t>1) << n
    cdef Py_ssize_t m = offs.shape[0] - 1
    cdef cnp.ndarray[double, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] scores = out
    cdef int64_t* table = <int64_t*> malloc(2 * width * sizeof(int64_t))
    cdef double* buf = <double*> malloc(((n + 1) * n // 2 + 1) * sizeof(double))
    cdef Py_ssize_t j, i
    cdef int64_t total, pruned
    if table == NULL or buf == NULL:
        free(table)
        free(buf)
        raise MemoryError()
    try:
        memcpy(table, &base[0], width * sizeof(int64_t))
        with nogil:
            for j in range(m):
                memset(table + width, 0, width * sizeof(int64_t))
                for i in range(offs[j], offs[j + 1]):
                    table[width + mk[post[i]]] += 1
                _zeta(table + width, n)
                scores[j] = _score(table, n + 1, kind, size, min_support, median, buf,
                                   &total, &pruned)
    finally:
        free(table)
        free(buf)
    return out
