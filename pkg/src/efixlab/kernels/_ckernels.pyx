# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling kernels; same contracts as ``_pykernels``."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline bint _worse(double ea, long ia, long ja, long ka,
                        double eb, long ib, long jb, long kb) noexcept:
    # True if witness a sorts before witness b
    if ea != eb:
        return ea > eb
    if ia != ib:
        return ia < ib
    if ja != jb:
        return ja < jb
    return ka < kb


def triangle_scan(P, double tol, int limit):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A = np.ascontiguousarray(P, dtype=np.float64)
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j, k, m, pos
    cdef double lhs, rhs, exc
    cdef long count = 0
    cdef Py_ssize_t filled = 0
    cdef cnp.ndarray[cnp.float64_t, ndim=1] top_l = np.empty(max(limit, 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] top_r = np.empty(max(limit, 1))
    cdef cnp.ndarray[cnp.int64_t, ndim=2] top_idx = np.empty((max(limit, 1), 3), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            lhs = A[i, j]
            for k in range(n):
                rhs = A[i, k] + A[k, j]
                if lhs > rhs + tol:
                    count += 1
                    if limit <= 0:
                        continue
                    exc = lhs - rhs
                    if filled == limit and not _worse(
                        exc, i, j, k,
                        top_l[filled - 1] - top_r[filled - 1],
                        top_idx[filled - 1, 0], top_idx[filled - 1, 1], top_idx[filled - 1, 2],
                    ):
                        continue
                    pos = filled if filled < limit else limit - 1
                    while pos > 0 and _worse(
                        exc, i, j, k,
                        top_l[pos - 1] - top_r[pos - 1],
                        top_idx[pos - 1, 0], top_idx[pos - 1, 1], top_idx[pos - 1, 2],
                    ):
                        top_l[pos] = top_l[pos - 1]
                        top_r[pos] = top_r[pos - 1]
                        for m in range(3):
                            top_idx[pos, m] = top_idx[pos - 1, m]
                        pos -= 1
                    top_l[pos] = lhs
                    top_r[pos] = rhs
                    top_idx[pos, 0] = i
                    top_idx[pos, 1] = j
                    top_idx[pos, 2] = k
                    if filled < limit:
                        filled += 1
    best = [
        (int(top_idx[m, 0]), int(top_idx[m, 1]), int(top_idx[m, 2]), float(top_l[m]), float(top_r[m]))
        for m in range(filled)
    ]
    return int(count), best


def ladder_diameters(P, D, deltas):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A = np.ascontiguousarray(P, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] B = np.ascontiguousarray(D, dtype=np.float64)
    cdef Py_ssize_t n = A.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] members = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t z, a, b, size
    cdef double delta, diam, v
    cdef long bz, bx, by
    cdef bint nonempty
    out = []
    for delta in deltas:
        nonempty = False
        diam = -1.0
        bz = bx = by = -1
        for z in range(n):
            size = 0
            for a in range(n):
                if A[z, a] <= delta:
                    members[size] = a
                    size += 1
            if size == 0:
                continue
            nonempty = True
            for a in range(size):
                for b in range(size):
                    v = B[members[a], members[b]]
                    if v > diam:
                        diam = v
                        bz = z
                        bx = members[a]
                        by = members[b]
        out.append((bool(nonempty), float(diam), int(bz), int(bx), int(by)))
    return out
