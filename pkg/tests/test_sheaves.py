from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gitplane.sheaves import (
    ChernData,
    Comparison,
    ReducedHilbertPolynomial,
    euler_characteristic,
    gieseker_compare,
    reduced_hilbert_polynomial,
    semistable_h1_table,
)

chern = st.builds(ChernData, st.integers(1, 6), st.integers(-6, 6), st.integers(-10, 20))


def test_euler_examples():
    assert euler_characteristic(ChernData(2, 0, 5)) == -3
    assert euler_characteristic(ChernData(1, 0, 2)) == -1
    assert euler_characteristic(ChernData(1, 0, 0)) == 1
    # O(1): r=1, c1=1 -> 3 sections
    assert euler_characteristic(ChernData(1, 1, 0)) == 3


@given(chern)
def test_hilbert_polynomial_agrees_with_riemann_roch(c):
    # chi(F(m)) for a twist: c1 -> c1 + r m, c2 -> c2 + (r-1) c1 m + C(r,2) m^2
    p = reduced_hilbert_polynomial(c)
    for m in range(-3, 4):
        c1m = c.c1 + c.rank * m
        c2m = c.c2 + (c.rank - 1) * c.c1 * m + c.rank * (c.rank - 1) * m * m // 2
        chi = Fraction(c.rank) + Fraction(c1m * (c1m + 3), 2) - c2m
        assert p(m) == chi / c.rank


def test_hilbert_example():
    p = reduced_hilbert_polynomial(ChernData(3, 0, 3))
    assert p.coefficients() == (Fraction(1, 2), Fraction(3, 2), 0)
    q = reduced_hilbert_polynomial(ChernData(2, 0, 5))
    assert q.constant == Fraction(-3, 2)


def test_leading_coefficient_enforced():
    with pytest.raises(ValueError):
        ReducedHilbertPolynomial(Fraction(1), Fraction(0), Fraction(0))


def test_gieseker_slope_dominates():
    lo = reduced_hilbert_polynomial(ChernData(2, -1, 0))
    hi = reduced_hilbert_polynomial(ChernData(2, 0, 100))
    assert gieseker_compare(lo, hi) is Comparison.LESS
    assert gieseker_compare(hi, lo) is Comparison.GREATER
    assert gieseker_compare(hi, hi) is Comparison.EQUAL


@given(chern, chern, chern)
def test_gieseker_total_order(a, b, c):
    pa, pb, pc = (reduced_hilbert_polynomial(x) for x in (a, b, c))
    ab, ba = gieseker_compare(pa, pb), gieseker_compare(pb, pa)
    assert ab.value == -ba.value
    if ab is Comparison.EQUAL:
        assert pa.coefficients() == pb.coefficients()
    if ab is Comparison.LESS and gieseker_compare(pb, pc) is Comparison.LESS:
        assert gieseker_compare(pa, pc) is Comparison.LESS


def test_h1_table():
    t = semistable_h1_table(2, 5)
    assert t.as_tuple() == (5, 5, 3)
    assert "h0(F)" in t.vanishing
    assert semistable_h1_table(3, 3).as_tuple() == (3, 3, 0)
    with pytest.raises(ValueError):
        semistable_h1_table(3, 2)
    with pytest.raises(ValueError):
        semistable_h1_table(2, 5, c1=1)
    with pytest.raises(ValueError):
        semistable_h1_table(0, 5)


@given(st.integers(1, 8), st.integers(0, 20))
def test_h1_table_matches_euler(r, extra):
    c2 = r + extra
    h = semistable_h1_table(r, c2)
    # with h0 = h2 = 0: chi(F) = -h1(F) and chi(F(-1)) = -h1(F(-1))
    assert -h.h1 == euler_characteristic(ChernData(r, 0, c2))
    # twists by -1, -2 of c1 = 0 data: c1 = -kr, c2 + C(r,2) k^2
    for k, h1 in ((1, h.h1_minus1), (2, h.h1_minus2)):
        twisted = ChernData(r, -k * r, c2 + r * (r - 1) // 2 * k * k)
        assert -h1 == euler_characteristic(twisted)


def test_rank_validation():
    with pytest.raises(ValueError):
        ChernData(0, 0, 1)
