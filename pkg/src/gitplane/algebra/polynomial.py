"""Homogeneous forms in three variables with exact rational coefficients.

Group action convention: ``substitute(f, M)`` is the form ``v -> f(M v)``
with ``v`` the column of variables.  Hence
``substitute(f, M1 @ M2) == substitute(substitute(f, M1), M2)``, and a point
``P`` lies on ``substitute(f, M)`` iff ``M P`` lies on ``f``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import sympy

from . import _backend
from . import univariate as uni
from .linalg import RationalMatrix, integer_rows

Exponent = tuple[int, int, int]

DEFAULT_NAMES = ("X", "Y", "Z")


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not accepted")
    return x if isinstance(x, Fraction) else Fraction(x)


class HomogeneousPolynomial:
    """A ternary form of fixed degree.

    The zero form keeps its nominal degree, so ``HomogeneousPolynomial.zero(3)``
    and ``HomogeneousPolynomial.zero(2)`` are different objects that are both
    zero.
    """

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != 3 or min(exp) < 0 or sum(exp) != degree:
                raise ValueError(f"exponent {exp} does not have degree {degree}")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.degree = degree
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> HomogeneousPolynomial:
        return cls(degree)

    @classmethod
    def constant(cls, c) -> HomogeneousPolynomial:
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def variable(cls, i: int) -> HomogeneousPolynomial:
        e = [0, 0, 0]
        e[i] = 1
        return cls(1, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> HomogeneousPolynomial:
        """The linear form ``c0*X + c1*Y + c2*Z``."""
        if len(coeffs) != 3:
            raise ValueError("a linear form needs three coefficients")
        return cls(1, {((1, 0, 0), (0, 1, 0), (0, 0, 1))[i]: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, exponents: Exponent, coeff=1) -> HomogeneousPolynomial:
        return cls(sum(exponents), {tuple(exponents): coeff})

    # -- basic access -----------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponents: Exponent) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, HomogeneousPolynomial):
            if self.is_zero() and other.is_zero():
                return True
            return self.degree == other.degree and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.is_zero()
            return self.degree == 0 and self._terms == {(0, 0, 0): Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items())) if self._terms else 0
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HomogeneousPolynomial.constant(other) if other else \
                HomogeneousPolynomial.zero(self.degree)
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HomogeneousPolynomial(self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return HomogeneousPolynomial(self.degree, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            return HomogeneousPolynomial(self.degree, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for (a, b, c), x in self._terms.items():
            for (p, q, r), y in other._terms.items():
                e = (a + p, b + q, c + r)
                out[e] = out.get(e, Fraction(0)) + x * y
        return HomogeneousPolynomial(self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not forms")
        result = HomogeneousPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x, y, z) -> Fraction:
        x, y, z = _frac(x), _frac(y), _frac(z)
        return sum((c * x ** a * y ** b * z ** e for (a, b, e), c in self._terms.items()),
                   Fraction(0))

    def evaluate(self, point: Sequence) -> Fraction:
        return self(*point)

    # -- structure ----------------------------------------------------------

    def degree_in(self, var: int) -> int:
        """Degree in one variable; -1 for the zero form."""
        return max((e[var] for e in self._terms), default=-1)

    def coefficients_in(self, var: int) -> list[HomogeneousPolynomial]:
        """``[c_0, ..., c_d]`` with ``f = sum c_k * var**k``; each c_k is a
        form of degree ``deg f - k`` not involving ``var``."""
        d = self.degree_in(var)
        buckets: list[dict] = [{} for _ in range(d + 1)]
        for e, c in self._terms.items():
            k = e[var]
            rest = list(e)
            rest[var] = 0
            buckets[k][tuple(rest)] = c
        return [HomogeneousPolynomial(self.degree - k, b) for k, b in enumerate(buckets)]

    def partial(self, var: int) -> HomogeneousPolynomial:
        if self.degree == 0:
            raise ValueError("partial derivative of a degree-0 form")
        out = {}
        for e, c in self._terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return HomogeneousPolynomial(self.degree - 1, out)

    def permute(self, order: Sequence[int]) -> HomogeneousPolynomial:
        """Rename variables: variable ``i`` becomes variable ``order[i]``."""
        out = {}
        for e, c in self._terms.items():
            f = [0, 0, 0]
            for i in range(3):
                f[order[i]] = e[i]
            out[tuple(f)] = c
        return HomogeneousPolynomial(self.degree, out)

    def is_proportional_to(self, other: HomogeneousPolynomial) -> bool:
        """True when ``other = c * self`` for a nonzero rational c."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.degree != other.degree or self._terms.keys() != other._terms.keys():
            return False
        e0 = next(iter(self._terms))
        ratio = other._terms[e0] / self._terms[e0]
        return all(other._terms[e] == ratio * c for e, c in self._terms.items())

    def primitive(self) -> HomogeneousPolynomial:
        """Scalar multiple with coprime integer coefficients and positive
        leading coefficient (in lexicographic exponent order)."""
        if self.is_zero():
            return self
        d = lcm(*(c.denominator for c in self._terms.values()))
        ints = [c.numerator * (d // c.denominator) for c in self._terms.values()]
        g = reduce(gcd, ints)
        lead = self._terms[max(self._terms)]
        if lead < 0:
            g = -g
        return self * Fraction(d, g)

    # -- conversions ------------------------------------------------------

    def to_sympy(self, symbols=None):
        symbols = symbols or sympy.symbols("X Y Z")
        return sympy.Poly(
            {e: sympy.Rational(c.numerator, c.denominator) for e, c in self._terms.items()}
            or {(0, 0, 0): 0},
            *symbols, domain="QQ")

    @classmethod
    def from_sympy(cls, poly, degree: int | None = None) -> HomogeneousPolynomial:
        poly = sympy.Poly(poly, *poly.gens) if not isinstance(poly, sympy.Poly) else poly
        terms = {}
        for e, c in poly.terms():
            c = sympy.Rational(c)
            if c:
                terms[tuple(e)] = Fraction(int(c.p), int(c.q))
        if degree is None:
            degree = poly.total_degree() if terms else 0
        return cls(degree, terms)

    def format(self, names: Sequence[str] = DEFAULT_NAMES) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"HomogeneousPolynomial({self.degree}, {self.format()!r})"


X = HomogeneousPolynomial.variable(0)
Y = HomogeneousPolynomial.variable(1)
Z = HomogeneousPolynomial.variable(2)


def _as_matrix(M) -> RationalMatrix:
    return M if isinstance(M, RationalMatrix) else RationalMatrix(M)


def substitute(f: HomogeneousPolynomial, M) -> HomogeneousPolynomial:
    """The form ``v -> f(M v)``.  ``M`` must be an invertible 3x3 matrix."""
    M = _as_matrix(M)
    if M.shape != (3, 3):
        raise ValueError("substitution matrix must be 3x3")
    if M.det() == 0:
        raise ValueError("substitution matrix is singular")
    images = [HomogeneousPolynomial.linear(M.row(i)) for i in range(3)]
    powers: list[dict[int, HomogeneousPolynomial]] = [{0: HomogeneousPolynomial.constant(1)}
                                                      for _ in range(3)]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    out = HomogeneousPolynomial.zero(f.degree)
    for (a, b, c), coeff in f.items():
        out = out + power(0, a) * power(1, b) * power(2, c) * coeff
    return HomogeneousPolynomial(f.degree, out.terms)


def partials(f: HomogeneousPolynomial):
    """``(df/dX, df/dY, df/dZ)``."""
    if f.degree == 0:
        raise ValueError("partials of a degree-0 form are not forms")
    return f.partial(0), f.partial(1), f.partial(2)


def _binary_at(f: HomogeneousPolynomial, x: Fraction) -> Fraction:
    """Evaluate a form in (X, Y) only at (x, 1)."""
    return sum((c * x ** e[0] for e, c in f.items()), Fraction(0))


def _sylvester(fc: Sequence[Fraction], gc: Sequence[Fraction]) -> list[list[Fraction]]:
    """Sylvester matrix of two univariate polynomials (coefficients low->high)."""
    df, dg = len(fc) - 1, len(gc) - 1
    size = df + dg
    rows = []
    for i in range(dg):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(fc)):
            row[i + k] = c
        rows.append(row)
    for i in range(df):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(gc)):
            row[i + k] = c
        rows.append(row)
    return rows


def scalar_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    if not rows:
        return Fraction(1)
    scale = 1
    for r in rows:
        scale *= lcm(*(x.denominator for x in r))
    return Fraction(_backend.det(integer_rows(rows)), scale)


def resultant_eliminate(f: HomogeneousPolynomial, g: HomogeneousPolynomial, var: int) -> HomogeneousPolynomial:
    """Sylvester resultant of ``f`` and ``g`` with respect to variable ``var``.

    The result is a form in the other two variables (``var`` has exponent 0),
    of degree ``deg f * deg g - (deg f - d_f) * (deg g - d_g)`` where ``d_f``,
    ``d_g`` are the degrees in ``var``.  Computed by evaluation at
    ``deg + 1`` points and exact interpolation.
    """
    df, dg = f.degree_in(var), g.degree_in(var)
    if df <= 0 or dg <= 0:
        raise ValueError("both polynomials need positive degree in the eliminated variable")
    others = [i for i in range(3) if i != var]
    # move (others[0], others[1], var) -> (X, Y, Z)
    order = [0, 0, 0]
    order[others[0]], order[others[1]], order[var] = 0, 1, 2
    F, G = f.permute(order), g.permute(order)
    fcoef, gcoef = F.coefficients_in(2), G.coefficients_in(2)
    D = f.degree * g.degree - (f.degree - df) * (g.degree - dg)
    xs = list(range(D + 1))
    ys = []
    for x in xs:
        x = Fraction(x)
        ys.append(scalar_det(_sylvester([_binary_at(c, x) for c in fcoef],
                                        [_binary_at(c, x) for c in gcoef])))
    u = uni.interpolate(xs, ys)
    terms = {}
    for k, c in enumerate(u):
        e = [0, 0, 0]
        e[others[0]], e[others[1]] = k, D - k
        terms[tuple(e)] = c
    return HomogeneousPolynomial(D, terms)


def det_linear_matrix(M: Sequence[Sequence[HomogeneousPolynomial]]) -> HomogeneousPolynomial:
    """Determinant of a square matrix of linear forms (or zeros).

    Evaluated on a grid with the last variable set to 1, then interpolated
    exactly; the result is homogeneous of degree ``len(M)``.
    """
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise ValueError("det_linear_matrix needs a non-empty square matrix")
    for row in M:
        for e in row:
            if not isinstance(e, HomogeneousPolynomial):
                raise TypeError("entries must be HomogeneousPolynomial")
            if not e.is_zero() and e.degree != 1:
                raise ValueError("entries must be linear forms or zero")
    coeffs = [[tuple(e.coefficient(u) for u in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
               for e in row] for row in M]
    nodes = list(range(n + 1))
    # table[j][i] = det at (a0, a1, a2) = (i, j, 1)
    by_a1 = []
    for j in nodes:
        vals = []
        for i in nodes:
            rows = [[c0 * i + c1 * j + c2 for (c0, c1, c2) in r] for r in coeffs]
            vals.append(scalar_det(rows))
        by_a1.append(uni.interpolate(nodes, vals))
    terms = {}
    for i in range(n + 1):
        column = [p[i] if i < len(p) else Fraction(0) for p in by_a1]
        for j, c in enumerate(uni.interpolate(nodes, column)):
            if c:
                if i + j > n:
                    raise AssertionError("interpolated determinant exceeds its degree")
                terms[(i, j, n - i - j)] = c
    return HomogeneousPolynomial(n, terms)


def higher_partials(f: HomogeneousPolynomial, order: int) -> list[HomogeneousPolynomial]:
    """All partial derivatives of the given order (one per multi-index)."""
    if order > f.degree:
        raise ValueError("derivative order exceeds the degree")
    level = {(0, 0, 0): f}
    for _ in range(order):
        nxt = {}
        for idx, g in level.items():
            for v in range(3):
                key = list(idx)
                key[v] += 1
                key = tuple(key)
                if key not in nxt:
                    nxt[key] = g.partial(v)
        level = nxt
    return [level[k] for k in sorted(level)]
