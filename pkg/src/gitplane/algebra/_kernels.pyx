# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Bareiss kernels.

Two paths: when the Hadamard bound of the input keeps every minor inside a
signed 64-bit word, elimination runs on C ``long long`` with ``__int128``
intermediates; otherwise it runs on Python integers with typed loops.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    typedef __int128 gp_i128;
    """
    ctypedef long long gp_i128

BACKEND = "cython"

# 2 * H**2 must stay below 2**127 and every minor below 2**63.
cdef object _WORD_LIMIT = 1 << 124


cdef bint _fits_word(list a):
    cdef object bound = 1
    cdef object s
    for row in a:
        s = 0
        for x in row:
            s += x * x
        if s > 1:
            bound *= s
            if bound >= _WORD_LIMIT:
                return False
    return True


cdef long long* _to_c(list a, Py_ssize_t nr, Py_ssize_t nc) except NULL:
    cdef long long* buf = <long long*> malloc(nr * nc * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(nr):
        row = a[i]
        for j in range(nc):
            buf[i * nc + j] = row[j]
    return buf


cdef tuple _echelon_c(list a, Py_ssize_t nr, Py_ssize_t nc):
    cdef long long* m = _to_c(a, nr, nc)
    cdef long long prev = 1, piv, f, t
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef list pivots = []
    try:
        for c in range(nc):
            if r == nr:
                break
            p = r
            while p < nr and m[p * nc + c] == 0:
                p += 1
            if p == nr:
                continue
            if p != r:
                for j in range(nc):
                    t = m[p * nc + j]
                    m[p * nc + j] = m[r * nc + j]
                    m[r * nc + j] = t
            piv = m[r * nc + c]
            for i in range(r + 1, nr):
                f = m[i * nc + c]
                for j in range(c + 1, nc):
                    m[i * nc + j] = <long long> (
                        (<gp_i128> piv * m[i * nc + j] - <gp_i128> f * m[r * nc + j])
                        / prev)
                m[i * nc + c] = 0
            prev = piv
            pivots.append(c)
            r += 1
        out = [[m[i * nc + j] for j in range(nc)] for i in range(r)]
    finally:
        free(m)
    return out, pivots


cdef tuple _echelon_obj(list a, Py_ssize_t nr, Py_ssize_t nc):
    cdef object prev = 1, piv, f
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef list pivots = []
    cdef list row_r, row_i
    for c in range(nc):
        if r == nr:
            break
        p = r
        while p < nr and (<list> a[p])[c] == 0:
            p += 1
        if p == nr:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        row_r = <list> a[r]
        piv = row_r[c]
        for i in range(r + 1, nr):
            row_i = <list> a[i]
            f = row_i[c]
            if f == 0:
                if piv != prev:
                    for j in range(c + 1, nc):
                        row_i[j] = piv * row_i[j] // prev
                continue
            for j in range(c + 1, nc):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def echelon(rows):
    """Fraction-free row echelon form: ``(nonzero rows, pivot columns)``."""
    cdef list a = [list(r) for r in rows]
    cdef Py_ssize_t nr = len(a)
    if nr == 0:
        return [], []
    cdef Py_ssize_t nc = len(a[0])
    if nc == 0:
        return [], []
    if _fits_word(a):
        return _echelon_c(a, nr, nc)
    return _echelon_obj(a, nr, nc)


def rank(rows):
    return len(echelon(rows)[1])


cdef object _det_c(list a, Py_ssize_t n):
    cdef long long* m = _to_c(a, n, n)
    cdef long long prev = 1, piv, f, t
    cdef Py_ssize_t k, p, i, j
    cdef int sign = 1
    cdef object result
    try:
        for k in range(n - 1):
            p = k
            while p < n and m[p * n + k] == 0:
                p += 1
            if p == n:
                return 0
            if p != k:
                for j in range(n):
                    t = m[p * n + j]
                    m[p * n + j] = m[k * n + j]
                    m[k * n + j] = t
                sign = -sign
            piv = m[k * n + k]
            for i in range(k + 1, n):
                f = m[i * n + k]
                for j in range(k + 1, n):
                    m[i * n + j] = <long long> (
                        (<gp_i128> piv * m[i * n + j] - <gp_i128> f * m[k * n + j])
                        / prev)
            prev = piv
        result = sign * m[(n - 1) * n + (n - 1)]
    finally:
        free(m)
    return result


cdef object _det_obj(list a, Py_ssize_t n):
    cdef object prev = 1, piv, f
    cdef Py_ssize_t k, p, i, j
    cdef int sign = 1
    cdef list row_k, row_i
    for k in range(n - 1):
        p = k
        while p < n and (<list> a[p])[k] == 0:
            p += 1
        if p == n:
            return 0
        if p != k:
            a[p], a[k] = a[k], a[p]
            sign = -sign
        row_k = <list> a[k]
        piv = row_k[k]
        for i in range(k + 1, n):
            row_i = <list> a[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (piv * row_i[j] - f * row_k[j]) // prev
        prev = piv
    return sign * (<list> a[n - 1])[n - 1]


def det(rows):
    cdef list a = [list(r) for r in rows]
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return 1
    for row in a:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    if _fits_word(a):
        return _det_c(a, n)
    return _det_obj(a, n)
