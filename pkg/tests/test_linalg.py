import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from gitplane.algebra import RationalMatrix, Subspace, nullspace, random_sl, subspace_intersect

from .conftest import leibniz_det, random_matrix

fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def matrices(n=None, m=None):
    rows = st.integers(1, 4) if n is None else st.just(n)
    cols = st.integers(1, 4) if m is None else st.just(m)
    return st.tuples(rows, cols).flatmap(
        lambda s: st.lists(st.lists(fractions, min_size=s[1], max_size=s[1]),
                           min_size=s[0], max_size=s[0]))


def to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


@given(matrices())
def test_rank_against_sympy(rows):
    assert RationalMatrix(rows).rank() == to_sympy(rows).rank()


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_against_leibniz(rows):
    assert RationalMatrix(rows).det() == leibniz_det(rows)


@given(matrices())
def test_kernel_is_annihilated_and_has_right_size(rows):
    A = RationalMatrix(rows)
    K = A.kernel()
    assert K.ncols == A.ncols - A.rank()
    for v in K.columns():
        assert all(x == 0 for x in A @ v)


def test_inverse_roundtrip(rng):
    for _ in range(20):
        A = RationalMatrix(random_matrix(rng, 4))
        if A.det() == 0:
            continue
        assert A @ A.inverse() == RationalMatrix.identity(4)
        assert A.inverse() @ A == RationalMatrix.identity(4)


def test_singular_inverse_rejected():
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2], [2, 4]]).inverse()


def test_floats_rejected():
    with pytest.raises(TypeError):
        RationalMatrix([[0.5]])


def test_ragged_rejected():
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2], [3]])


def test_transpose_and_product_shape():
    A = RationalMatrix([[1, 2, 3], [4, 5, 6]])
    assert A.T.shape == (3, 2)
    assert (A @ A.T).rows == ((14, 32), (32, 77))


def test_example_intersection():
    a = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    b = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    meet = subspace_intersect(a, b)
    assert meet.dim == 1
    assert meet == Subspace.span([(0, 1, 0)], 3)


def test_intersection_with_zero_and_full():
    a = Subspace.span([(1, 2, 3)], 3)
    assert subspace_intersect(a, Subspace.zero(3)).dim == 0
    assert subspace_intersect(a, Subspace.full(3)) == a


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        subspace_intersect(Subspace.full(2), Subspace.full(3))


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        Subspace(RationalMatrix.from_columns([(1, 2), (2, 4)], 2))


@given(st.lists(st.lists(fractions, min_size=5, max_size=5), max_size=4),
       st.lists(st.lists(fractions, min_size=5, max_size=5), max_size=4))
def test_grassmann_formula(u, v):
    a, b = Subspace.span(u, 5), Subspace.span(v, 5)
    meet = a & b
    assert meet.dim == a.dim + b.dim - (a + b).dim
    assert meet <= a and meet <= b
    for w in meet.vectors():
        assert w in a and w in b


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), max_size=4))
def test_annihilator(vs):
    S = Subspace.span(vs, 4)
    ann = S.annihilator()
    assert ann.dim == 4 - S.dim
    for w in ann.vectors():
        for v in S.vectors():
            assert sum(x * y for x, y in zip(w, v)) == 0
    assert ann.annihilator() == S


def test_nullspace_of_empty_rows_is_everything():
    assert len(nullspace([], 3)) == 3


def test_random_sl_has_det_one():
    rng = random.Random(1)
    for _ in range(30):
        g = random_sl(3, rng)
        assert g.det() == 1


def test_exact_entries():
    A = RationalMatrix([[Fraction(1, 3), Fraction(1, 6)], [Fraction(2, 5), Fraction(1, 7)]])
    assert A.det() == Fraction(1, 21) - Fraction(1, 15)
