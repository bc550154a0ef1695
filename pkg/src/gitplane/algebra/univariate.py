"""Univariate polynomials over Q as coefficient lists (lowest degree first)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

Poly = list  # list[Fraction], trailing zeros trimmed


def trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Fraction]) -> int:
    """Degree of ``p``; -1 for the zero polynomial."""
    return len(trim(p)) - 1


def monic(p: Sequence[Fraction]) -> Poly:
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [x / lc for x in p]


def divmod_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Poly, Poly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b):
        c = r[-1] / lb
        shift = len(r) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] -= c * bi
        r = trim(r)
    return trim(q), r


def gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def evaluate(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Exact Newton interpolation through distinct nodes."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= c * xs[i]
        nxt[0] += coef[i]
        poly = nxt
    return trim(poly)


def rational_roots(p: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots, sorted.  The zero polynomial is rejected."""
    p = trim(p)
    if not p:
        raise ValueError("every number is a root of the zero polynomial")
    if len(p) == 1:
        return []
    x = sympy.Symbol("x")
    expr = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p])),
                      x, domain="QQ")
    roots = set()
    for factor, _ in expr.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.add(Fraction(int(r.p), int(r.q)))
    return sorted(roots)
