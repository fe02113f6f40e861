# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled weighted edit-distance kernels.

Sequences arrive as inventory indices plus a flag byte per position
(bit 0 = onset, bit 1 = stressed); ``mult[flags]`` is the position multiplier.
Arithmetic order matches ``_dp_py`` exactly so both backends agree bit for bit.
"""

import numpy as np


def cost_table(const int[::1] a, const unsigned char[::1] af,
               const int[::1] b, const unsigned char[::1] bf,
               const double[:, ::1] sub, double indel, const double[::1] mult):
    cdef Py_ssize_t m = a.shape[0], n = b.shape[0], i, j
    cdef double diag, up, left, best
    table = np.empty((m + 1, n + 1), dtype=np.float64)
    cdef double[:, ::1] t = table
    t[0, 0] = 0.0
    for i in range(1, m + 1):
        t[i, 0] = t[i - 1, 0] + indel * mult[af[i - 1]]
    for j in range(1, n + 1):
        t[0, j] = t[0, j - 1] + indel * mult[bf[j - 1]]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            diag = t[i - 1, j - 1] + sub[a[i - 1], b[j - 1]] * mult[af[i - 1] | bf[j - 1]]
            up = t[i - 1, j] + indel * mult[af[i - 1]]
            left = t[i, j - 1] + indel * mult[bf[j - 1]]
            best = diag
            if up < best:
                best = up
            if left < best:
                best = left
            t[i, j] = best
    return table


cdef double _pair(const int[::1] a, const unsigned char[::1] af, Py_ssize_t a0, Py_ssize_t a1,
                  const int[::1] b, const unsigned char[::1] bf, Py_ssize_t b0, Py_ssize_t b1,
                  const double[:, ::1] sub, double indel, const double[::1] mult,
                  double[::1] prev, double[::1] cur) noexcept nogil:
    cdef Py_ssize_t m = a1 - a0, n = b1 - b0, i, j
    cdef double diag, up, left, best
    cdef unsigned char fa
    cdef int sa
    prev[0] = 0.0
    for j in range(1, n + 1):
        prev[j] = prev[j - 1] + indel * mult[bf[b0 + j - 1]]
    for i in range(1, m + 1):
        fa = af[a0 + i - 1]
        sa = a[a0 + i - 1]
        cur[0] = prev[0] + indel * mult[fa]
        for j in range(1, n + 1):
            diag = prev[j - 1] + sub[sa, b[b0 + j - 1]] * mult[fa | bf[b0 + j - 1]]
            up = prev[j] + indel * mult[fa]
            left = cur[j - 1] + indel * mult[bf[b0 + j - 1]]
            best = diag
            if up < best:
                best = up
            if left < best:
                best = left
            cur[j] = best
        for j in range(n + 1):
            prev[j] = cur[j]
    return prev[n]


def pairwise(const int[::1] a, const unsigned char[::1] af, const long long[::1] a_off,
             const int[::1] b, const unsigned char[::1] bf, const long long[::1] b_off,
             const double[:, ::1] sub, double indel, const double[::1] mult):
    """Distance matrix between every packed sequence of ``a`` and of ``b``."""
    cdef Py_ssize_t na = a_off.shape[0] - 1, nb = b_off.shape[0] - 1, p, q
    cdef Py_ssize_t width = 1
    for q in range(nb):
        if b_off[q + 1] - b_off[q] + 1 > width:
            width = b_off[q + 1] - b_off[q] + 1
    out = np.empty((na, nb), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double[::1] prev = np.empty(width, dtype=np.float64)
    cdef double[::1] cur = np.empty(width, dtype=np.float64)
    with nogil:
        for p in range(na):
            for q in range(nb):
                o[p, q] = _pair(a, af, a_off[p], a_off[p + 1], b, bf, b_off[q], b_off[q + 1],
                                sub, indel, mult, prev, cur)
    return out
