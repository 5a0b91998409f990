# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the min-plus kernels.

Both functions mirror :mod:`mcmean._pykernels` exactly. Inputs are validated
by the caller (:mod:`mcmean.kernels`): entries are either the infinity
sentinel or lie in ``[0, MAX_FINITE]`` with ``MAX_FINITE < 2**60``.

Inside the product loop infinity is replaced by ``BIG = 2**61``: a finite
sum stays below ``BIG``, anything involving ``BIG`` lands at or above it,
and ``BIG + BIG`` still fits in int64, so the inner loop needs no branch.
"""
import numpy as np

from libc.stdint cimport int64_t

cdef int64_t INF = 0x7FFFFFFFFFFFFFFF
cdef int64_t BIG = (<int64_t>1) << 61


def minplus_product(const int64_t[:, ::1] A, const int64_t[:, ::1] B):
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t inner = A.shape[1]
    cdef Py_ssize_t p = B.shape[1]
    b_big = np.empty((inner, p), dtype=np.int64)
    out = np.empty((n, p), dtype=np.int64)
    cdef int64_t[:, ::1] Bb = b_big
    cdef int64_t[:, ::1] C = out
    cdef Py_ssize_t i, j, k
    cdef int64_t a, s
    cdef int64_t *crow
    cdef const int64_t *brow
    with nogil:
        for k in range(inner):
            for j in range(p):
                Bb[k, j] = BIG if B[k, j] == INF else B[k, j]
        for i in range(n):
            crow = &C[i, 0]
            for j in range(p):
                crow[j] = BIG
            for k in range(inner):
                a = A[i, k]
                if a == INF:
                    continue
                brow = &Bb[k, 0]
                for j in range(p):
                    s = a + brow[j]
                    crow[j] = s if s < crow[j] else crow[j]
            for j in range(p):
                if crow[j] >= BIG:
                    crow[j] = INF
    return out


def relax(const int64_t[::1] src, const int64_t[::1] dst,
          const int64_t[::1] weight, const int64_t[::1] values,
          Py_ssize_t size):
    cdef Py_ssize_t m = src.shape[0]
    out = np.full(size, INF, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef Py_ssize_t e
    cdef int64_t v, s
    with nogil:
        for e in range(m):
            v = values[dst[e]]
            if v == INF:
                continue
            s = weight[e] + v
            if s < res[src[e]]:
                res[src[e]] = s
    return out
