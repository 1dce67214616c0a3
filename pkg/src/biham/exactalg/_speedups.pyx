# cython: language_level=3
# cython: boundscheck=False
"""Cython twin of `_pure_kernels`: fraction-free row echelon on Python ints.

Entries stay arbitrary-precision Python integers (the arithmetic itself is
CPython's bigint code either way); the win over the pure module is removing
interpreter dispatch from the O(n^3) loop.
"""

BACKEND = "cython"


def row_echelon_ff(list m):
    cdef Py_ssize_t n_rows = len(m)
    cdef Py_ssize_t n_cols = len(m[0]) if n_rows else 0
    cdef Py_ssize_t r = 0, c, i, j, best
    cdef list pivot_cols = []
    cdef list row_r, row_i
    cdef object prev = 1
    cdef object piv, t, v, a, best_abs
    for c in range(n_cols):
        if r >= n_rows:
            break
        best = -1
        best_abs = 0
        for i in range(r, n_rows):
            v = (<list>m[i])[c]
            if v != 0:
                a = -v if v < 0 else v
                if best < 0 or a < best_abs:
                    best = i
                    best_abs = a
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        row_r = <list>m[r]
        piv = row_r[c]
        for i in range(r + 1, n_rows):
            row_i = <list>m[i]
            t = row_i[c]
            row_i[c] = 0
            if t == 0:
                if prev == 1:
                    for j in range(c + 1, n_cols):
                        row_i[j] = row_i[j] * piv
                else:
                    for j in range(c + 1, n_cols):
                        row_i[j] = row_i[j] * piv // prev
            else:
                if prev == 1:
                    for j in range(c + 1, n_cols):
                        row_i[j] = row_i[j] * piv - t * row_r[j]
                else:
                    for j in range(c + 1, n_cols):
                        row_i[j] = (row_i[j] * piv - t * row_r[j]) // prev
        prev = piv
        pivot_cols.append(c)
        r += 1
    return r, pivot_cols


def rank_int(list m):
    rank, _ = row_echelon_ff(m)
    return rank
