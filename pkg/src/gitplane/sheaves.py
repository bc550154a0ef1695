"""Chern-class bookkeeping for torsion-free sheaves on P^2.

Riemann-Roch, reduced Hilbert polynomials, the lexicographic Gieseker order
and the cohomology table of a non-trivial semistable sheaf with c1 = 0.
These are formula evaluators: semistability is a caller-side hypothesis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: int
    c2: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be at least 1")


@dataclass(frozen=True, order=False)
class ReducedHilbertPolynomial:
    """``quadratic*m^2 + linear*m + constant``; on P^2 the quadratic term is 1/2."""

    quadratic: Fraction
    linear: Fraction
    constant: Fraction

    def __post_init__(self):
        if self.quadratic != Fraction(1, 2):
            raise ValueError("reduced Hilbert polynomials on P^2 have leading coefficient 1/2")

    @property
    def slope(self) -> Fraction:
        return self.linear - Fraction(3, 2)

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.quadratic, self.linear, self.constant

    def __call__(self, m) -> Fraction:
        m = Fraction(m)
        return self.quadratic * m * m + self.linear * m + self.constant


class Comparison(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def euler_characteristic(c: ChernData) -> int:
    """chi = r + c1(c1 + 3)/2 - c2."""
    return c.rank + c.c1 * (c.c1 + 3) // 2 - c.c2


def reduced_hilbert_polynomial(c: ChernData) -> ReducedHilbertPolynomial:
    slope = Fraction(c.c1, c.rank)
    return ReducedHilbertPolynomial(
        Fraction(1, 2), Fraction(3, 2) + slope, Fraction(euler_characteristic(c), c.rank))


def gieseker_compare(p: ReducedHilbertPolynomial, q: ReducedHilbertPolynomial) -> Comparison:
    """Lexicographic comparison starting from the highest-degree coefficient."""
    a, b = p.coefficients(), q.coefficients()
    if a < b:
        return Comparison.LESS
    if a > b:
        return Comparison.GREATER
    return Comparison.EQUAL


@dataclass(frozen=True)
class CohomologyTable:
    """h^1 of F(-2), F(-1), F for semistable F with c1 = 0; the listed h^0
    and h^2 groups vanish."""

    h1_minus2: int
    h1_minus1: int
    h1: int
    vanishing: tuple[str, ...] = ("h0(F(-1))", "h0(F)", "h2(F(-1))", "h2(F)")

    def as_tuple(self) -> tuple[int, int, int]:
        return self.h1_minus2, self.h1_minus1, self.h1


def semistable_h1_table(r: int, c2: int, c1: int = 0) -> CohomologyTable:
    if r < 1:
        raise ValueError("rank must be at least 1")
    if c1 != 0:
        raise ValueError("the cohomology table is only available for c1 = 0")
    if c2 < r:
        raise ValueError(
            f"c2 = {c2} < r = {r}: a non-trivial semistable sheaf with c1 = 0 has c2 >= r")
    return CohomologyTable(c2, c2, c2 - r)
