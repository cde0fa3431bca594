# cython: boundscheck=False, wraparound=False
"""Compiled edit-distance kernel; mirrors _fallback.levenshtein_codepoints."""

from libc.stdlib cimport free, malloc


def levenshtein_codepoints(str a, str b):
    """Unit-cost Levenshtein distance over Unicode scalar values."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(b)
    if m < n:
        a, b = b, a
        m, n = n, m
    if n == 0:
        return m
    cdef Py_ssize_t *row = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    if row is NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, above, left, diag, cost, best
    cdef Py_UCS4 ca, cb
    try:
        for j in range(n + 1):
            row[j] = j
        for i in range(m):
            ca = a[i]
            diag = row[0]
            row[0] = i + 1
            for j in range(1, n + 1):
                cb = b[j - 1]
                above = row[j]
                left = row[j - 1]
                cost = diag if ca == cb else diag + 1
                best = cost
                if above + 1 < best:
                    best = above + 1
                if left + 1 < best:
                    best = left + 1
                row[j] = best
                diag = above
        return row[n]
    finally:
        free(row)
