import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given
from hypothesis import strategies as st

from gitplane.algebra import (
    HomogeneousPolynomial,
    RationalMatrix,
    X,
    Y,
    Z,
    det_linear_matrix,
    higher_partials,
    partials,
    resultant_eliminate,
    substitute,
)
from gitplane.algebra import univariate as uni

from .conftest import random_form, random_matrix

sx, sy, sz = sympy.symbols("X Y Z")


def as_sympy(f):
    return sympy.expand(f.to_sympy((sx, sy, sz)).as_expr())


def test_construction_and_equality():
    f = X * Y + Z ** 2 * 3
    assert f.degree == 2
    assert f.coefficient((0, 0, 2)) == 3
    assert f == HomogeneousPolynomial(2, {(1, 1, 0): 1, (0, 0, 2): 3})
    assert HomogeneousPolynomial.zero(3) == HomogeneousPolynomial.zero(5)


def test_inhomogeneous_rejected():
    with pytest.raises(ValueError):
        HomogeneousPolynomial(2, {(1, 0, 0): 1})
    with pytest.raises(ValueError):
        X + Y * Y


def test_substitute_example():
    # first column (1, 1, 0): e_X goes to e_X + e_Y
    M = RationalMatrix([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    assert substitute(X + Y + Z, M) == 2 * X + Y + Z


def test_substitute_is_pullback_of_values(rng):
    for _ in range(15):
        f = random_form(rng, rng.randint(1, 4))
        M = RationalMatrix(random_matrix(rng, 3))
        if M.det() == 0:
            continue
        g = substitute(f, M)
        for _ in range(3):
            v = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
            assert g.evaluate(v) == f.evaluate(M @ v)


def test_substitute_is_multiplicative(rng):
    for _ in range(10):
        f = random_form(rng, 3)
        A, B = (RationalMatrix(random_matrix(rng, 3)) for _ in range(2))
        if A.det() == 0 or B.det() == 0:
            continue
        assert substitute(f, A @ B) == substitute(substitute(f, A), B)


def test_substitute_rejects_singular():
    with pytest.raises(ValueError):
        substitute(X, RationalMatrix([[1, 0, 0], [1, 0, 0], [0, 0, 1]]))


def test_partials_example():
    fx, fy, fz = partials(X ** 2 * Y + Z ** 3)
    assert (fx, fy, fz) == (X * Y * 2, X ** 2, Z ** 2 * 3)
    with pytest.raises(ValueError):
        partials(HomogeneousPolynomial.constant(1))


@given(st.integers(1, 6), st.integers(0, 10 ** 6))
def test_euler_identity(n, seed):
    f = random_form(random.Random(seed), n)
    fx, fy, fz = partials(f)
    assert X * fx + Y * fy + Z * fz == f * n


def test_higher_partials_count_and_order():
    f = X ** 2 * Y * Z
    ds = higher_partials(f, 2)
    assert len(ds) == 6
    assert all(d.degree == 2 for d in ds if not d.is_zero())
    with pytest.raises(ValueError):
        higher_partials(f, 5)


def test_resultant_examples():
    assert resultant_eliminate(X - Z, Y - Z, 2).is_proportional_to(X - Y)
    assert resultant_eliminate(X * Z + Y * Y, Z, 2).is_proportional_to(Y ** 2)
    r = resultant_eliminate(X * Z, Y * Z, 2)
    assert r.is_zero()


@pytest.mark.parametrize("var", [0, 1, 2])
def test_resultant_matches_sympy(rng, var):
    sv = (sx, sy, sz)[var]
    for _ in range(8):
        f = random_form(rng, rng.randint(1, 4))
        g = random_form(rng, rng.randint(1, 4))
        if f.degree_in(var) <= 0 or g.degree_in(var) <= 0:
            continue
        ours = as_sympy(resultant_eliminate(f, g, var))
        # classical Sylvester determinant; sympy.resultant uses another sign
        theirs = sylvester(as_sympy(f), as_sympy(g), sv).det()
        assert sympy.expand(ours - theirs) == 0
        other = sympy.resultant(as_sympy(f), as_sympy(g), sv)
        assert sympy.expand(ours - other) == 0 or sympy.expand(ours + other) == 0


def test_resultant_needs_the_variable():
    with pytest.raises(ValueError):
        resultant_eliminate(X, Y, 2)


def test_det_linear_matrix_example():
    M = [[X, Y], [Y, Z]]
    assert det_linear_matrix(M) == X * Z - Y * Y


def test_det_linear_matrix_matches_sympy(rng):
    for n in range(1, 6):
        M = [[HomogeneousPolynomial.linear([rng.randint(-3, 3) for _ in range(3)])
              for _ in range(n)] for _ in range(n)]
        ours = det_linear_matrix(M)
        theirs = sympy.Matrix([[as_sympy(e) for e in row] for row in M]).det()
        assert sympy.expand(as_sympy(ours) - theirs) == 0
        assert ours.is_zero() or ours.degree == n


def test_det_linear_matrix_zero_and_errors():
    z = HomogeneousPolynomial.zero(1)
    assert det_linear_matrix([[X, Y], [X, Y]]).is_zero()
    assert det_linear_matrix([[z, X], [Y, z]]) == -(X * Y)
    with pytest.raises(ValueError):
        det_linear_matrix([[X * X]])
    with pytest.raises(ValueError):
        det_linear_matrix([])


def test_sympy_roundtrip(rng):
    for _ in range(10):
        f = random_form(rng, 4)
        assert HomogeneousPolynomial.from_sympy(f.to_sympy(), degree=4) == f


def test_format():
    assert (X * Z - Y ** 2).format(("l1", "l2", "l3")) == "l1*l3 - l2^2"


class TestUnivariate:
    def test_interpolate_recovers(self, rng):
        for _ in range(10):
            p = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 7))]
            xs = list(range(len(p)))
            assert uni.interpolate(xs, [uni.evaluate(p, x) for x in xs]) == uni.trim(p)

    def test_gcd(self):
        a = [Fraction(-1), Fraction(0), Fraction(1)]  # x^2 - 1
        b = [Fraction(1), Fraction(1)]                # x + 1
        assert uni.gcd(a, b) == [1, 1]
        assert uni.gcd([], []) == []

    def test_rational_roots(self):
        # (2x - 1)(x + 3)(x^2 + 1)
        p = sympy.Poly(sympy.expand((2 * sx - 1) * (sx + 3) * (sx ** 2 + 1)), sx)
        coeffs = [Fraction(int(c)) for c in reversed(p.all_coeffs())]
        assert uni.rational_roots(coeffs) == [Fraction(-3), Fraction(1, 2)]
        with pytest.raises(ValueError):
            uni.rational_roots([])
