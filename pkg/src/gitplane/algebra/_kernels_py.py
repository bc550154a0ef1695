"""Fraction-free (Bareiss) elimination on integer matrices, pure Python.

Same contract as the compiled ``_kernels`` module.  Inputs are sequences of
integer rows; they are copied, never mutated.
"""

BACKEND = "python"


def echelon(rows):
    """Fraction-free row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` holds the nonzero echelon rows
    (integers) and ``pivots`` the pivot column of each.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    if nr == 0:
        return [], []
    nc = len(a[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        p = r
        while p < nr and a[p][c] == 0:
            p += 1
        if p == nr:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        row_r = a[r]
        piv = row_r[c]
        for i in range(r + 1, nr):
            row_i = a[i]
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


def rank(rows):
    return len(echelon(rows)[1])


def det(rows):
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        p = k
        while p < n and a[p][k] == 0:
            p += 1
        if p == n:
            return 0
        if p != k:
            a[p], a[k] = a[k], a[p]
            sign = -sign
        row_k = a[k]
        piv = row_k[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (piv * row_i[j] - f * row_k[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]
