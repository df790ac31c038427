# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Same contracts as `_pykernels`; the full-game recursion lives entirely in C
so exhaustive evaluation and GA fitness stay fast.
"""

from libc.math cimport log
from libc.stdlib cimport free, malloc

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "c"

TIE_TOL = 1e-9

KIND_WEIGHTED = 0
KIND_KNUTH = 1
KIND_MOST_PARTS = 2

cdef double INV_LN2 = 1.4426950408889634
cdef double _TIE_TOL = 1e-9
cdef int MAX_FB = 64


def build_table(pegs, int c, fb_lookup):
    cdef const cnp.int8_t[:, ::1] pv = np.ascontiguousarray(pegs, dtype=np.int8)
    cdef const cnp.int16_t[:, ::1] lut = np.ascontiguousarray(fb_lookup, dtype=np.int16)
    cdef Py_ssize_t S = pv.shape[0]
    cdef Py_ssize_t n = pv.shape[1]
    out = np.empty((S, S), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] ov = out
    counts = np.zeros((S, c), dtype=np.int8)
    cdef cnp.int8_t[:, ::1] cc = counts
    cdef Py_ssize_t i, j, k
    cdef int bulls, matches, a, b
    cdef cnp.int16_t idx
    for i in range(S):
        for k in range(n):
            cc[i, pv[i, k]] += 1
    with nogil:
        for i in range(S):
            for j in range(S):
                bulls = 0
                for k in range(n):
                    if pv[i, k] == pv[j, k]:
                        bulls += 1
                matches = 0
                for k in range(c):
                    a = cc[i, k]
                    b = cc[j, k]
                    matches += a if a < b else b
                idx = lut[bulls, matches - bulls]
                if idx < 0:
                    with gil:
                        raise AssertionError("feedback lookup produced an invalid pair")
                ov[i, j] = <cnp.uint8_t> idx
    return out


cdef void _score_all(const cnp.uint8_t[:, ::1] table,
                     const cnp.int64_t* rem, Py_ssize_t m,
                     int kind, const double* w, int nfb,
                     double* scores) nogil:
    cdef Py_ssize_t S = table.shape[0]
    cdef Py_ssize_t g, j
    cdef int i, f, nt, mx, parts
    cdef long cnt[64]
    cdef int touched[64]
    cdef double score, p
    cdef const cnp.uint8_t* row
    for i in range(nfb):
        cnt[i] = 0
    if m < 64:
        # sparse path: track which buckets a guess actually hits so the
        # per-guess work is O(m), not O(m + nfb)
        for g in range(S):
            row = &table[g, 0]
            nt = 0
            for j in range(m):
                f = row[rem[j]]
                if cnt[f] == 0:
                    touched[nt] = f
                    nt += 1
                cnt[f] += 1
            if kind == 1:
                mx = 0
                for i in range(nt):
                    if cnt[touched[i]] > mx:
                        mx = <int> cnt[touched[i]]
                scores[g] = -mx
            elif kind == 2:
                scores[g] = nt
            else:
                score = 0.0
                for i in range(nt):
                    f = touched[i]
                    p = (<double> cnt[f]) / (<double> m)
                    score -= w[f] * p * log(p) * INV_LN2
                scores[g] = score
            for i in range(nt):
                cnt[touched[i]] = 0
        return
    for g in range(S):
        row = &table[g, 0]
        for j in range(m):
            cnt[row[rem[j]]] += 1
        if kind == 1:
            mx = 0
            for i in range(nfb):
                if cnt[i] > mx:
                    mx = <int> cnt[i]
            scores[g] = -mx
        elif kind == 2:
            parts = 0
            for i in range(nfb):
                if cnt[i] > 0:
                    parts += 1
            scores[g] = parts
        else:
            score = 0.0
            for i in range(nfb):
                if cnt[i] > 0:
                    p = (<double> cnt[i]) / (<double> m)
                    score -= w[i] * p * log(p) * INV_LN2
            scores[g] = score
        for i in range(nfb):
            cnt[i] = 0


cdef Py_ssize_t _select(const double* scores, Py_ssize_t S,
                        const cnp.uint8_t* member) nogil:
    cdef double best = scores[0]
    cdef Py_ssize_t g
    for g in range(1, S):
        if scores[g] > best:
            best = scores[g]
    best -= _TIE_TOL
    for g in range(S):
        if scores[g] >= best and member[g]:
            return g
    for g in range(S):
        if scores[g] >= best:
            return g
    return 0


def guess_scores(table, remaining, int kind, weights):
    cdef const cnp.uint8_t[:, ::1] tv = table
    cdef cnp.int64_t[::1] rv = np.ascontiguousarray(remaining, dtype=np.int64)
    cdef double[::1] wv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef int nfb = wv.shape[0]
    out = np.empty(tv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        _score_all(tv, &rv[0], rv.shape[0], kind, &wv[0], nfb, &ov[0])
    return out


def select_index(scores, member, tol=None):
    cdef double[::1] sv = np.ascontiguousarray(scores, dtype=np.float64)
    cdef cnp.uint8_t[::1] mv = np.ascontiguousarray(member, dtype=np.uint8)
    return _select(&sv[0], sv.shape[0], &mv[0])


cdef int _expand(const cnp.uint8_t[:, ::1] table,
                 cnp.int64_t* rem, Py_ssize_t m, int turn, int max_turns,
                 int kind, const double[:, ::1] weights,
                 int forced_opening,
                 double* scores, cnp.uint8_t* member,
                 cnp.int32_t* turns) nogil:
    """Recursively play out one remaining set; fills per-secret turn counts.

    Partitions `rem` in place with a counting sort by feedback bucket.
    Returns 0, or -1 on allocation failure.
    """
    cdef Py_ssize_t S = table.shape[0]
    cdef int nfb = weights.shape[1]
    cdef int solved = nfb - 1
    cdef Py_ssize_t g, j
    cdef int i, wrow
    cdef long bucket_count[64]
    cdef long bucket_start[64]
    cdef long pos[64]
    cdef const cnp.uint8_t* row
    cdef cnp.int64_t* scratch
    cdef int rc

    if turn > max_turns:
        return 0
    if m == 1:
        turns[rem[0]] = turn
        return 0
    if forced_opening >= 0 and turn == 1:
        g = forced_opening
    else:
        wrow = turn if turn < weights.shape[0] else weights.shape[0]
        _score_all(table, rem, m, kind, &weights[wrow - 1, 0], nfb, scores)
        for j in range(m):
            member[rem[j]] = 1
        g = _select(scores, S, member)
        for j in range(m):
            member[rem[j]] = 0

    row = &table[g, 0]
    for i in range(nfb):
        bucket_count[i] = 0
    for j in range(m):
        bucket_count[row[rem[j]]] += 1
    if bucket_count[solved] > 0:
        turns[g] = turn
    bucket_start[0] = 0
    for i in range(1, nfb):
        bucket_start[i] = bucket_start[i - 1] + bucket_count[i - 1]
    for i in range(nfb):
        pos[i] = bucket_start[i]
    scratch = <cnp.int64_t*> malloc(m * sizeof(cnp.int64_t))
    if scratch == NULL:
        return -1
    for j in range(m):
        i = row[rem[j]]
        scratch[pos[i]] = rem[j]
        pos[i] += 1
    for j in range(m):
        rem[j] = scratch[j]
    free(scratch)
    for i in range(nfb):
        if i != solved and bucket_count[i] > 0:
            rc = _expand(table, rem + bucket_start[i], bucket_count[i],
                         turn + 1, max_turns, kind, weights, forced_opening,
                         scores, member, turns)
            if rc != 0:
                return rc
    return 0


def play_all(table, int kind, weights, int forced_opening, int max_turns):
    cdef const cnp.uint8_t[:, ::1] tv = table
    cdef double[:, ::1] wv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t S = tv.shape[0]
    if wv.shape[1] > MAX_FB:
        raise ValueError("too many feedback types for the compiled kernel")
    turns = np.zeros(S, dtype=np.int32)
    cdef cnp.int32_t[::1] ov = turns
    rem = np.arange(S, dtype=np.int64)
    cdef cnp.int64_t[::1] rv = rem
    scores_buf = np.empty(S, dtype=np.float64)
    cdef double[::1] sv = scores_buf
    member_buf = np.zeros(S, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mv = member_buf
    cdef int rc
    with nogil:
        rc = _expand(tv, &rv[0], S, 1, max_turns, kind, wv, forced_opening,
                     &sv[0], &mv[0], &ov[0])
    if rc != 0:
        raise MemoryError("allocation failed in game recursion")
    return turns
