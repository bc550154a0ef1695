import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from gitplane.algebra import HomogeneousPolynomial, RationalMatrix, random_sl
from gitplane.curves import PlaneCurve, ProjectivePoint, is_nonsingular, multiplicity_at
from gitplane.hulsbergen import (
    DualLinePoint,
    HulsbergenDatum,
    PointConfiguration,
    dual_action,
    equivariance_check,
    is_stable_config,
    jump_curve,
    jump_curve_form,
    points_on_line,
    rank2_unstable_check,
    richest_line,
    secant_vanishing,
    splitting_on_line,
    transformed_jump_form,
)
from gitplane.sheaves import euler_characteristic

from .conftest import random_coefficients, random_configuration

A0, A1, A2 = (HomogeneousPolynomial.variable(i) for i in range(3))
TRIANGLE = PointConfiguration(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def expanded_oracle(datum):
    """Direct sympy expansion of sum_i a_i prod_{j != i} <a, x_j>."""
    a = sympy.symbols("a0 a1 a2")
    lin = [sum(sympy.Rational(c.numerator, c.denominator) * s for c, s in zip(p, a))
           for p in datum.config.points]
    total = 0
    for i, c in enumerate(datum.coefficients):
        term = sympy.Rational(c.numerator, c.denominator)
        for j, L in enumerate(lin):
            if j != i:
                term *= L
        total += term
    return sympy.expand(total), a


def test_triangle_conic():
    datum = HulsbergenDatum(TRIANGLE, (1, 1, 1))
    curve = jump_curve(datum)
    assert curve.degree == 2
    assert curve.form.is_proportional_to(A0 * A1 + A1 * A2 + A0 * A2)
    assert is_nonsingular(curve)


def test_triangle_plus_point():
    config = PointConfiguration(((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)))
    form = jump_curve_form(HulsbergenDatum(config, (1, 1, 1, 1)))
    s = A0 + A1 + A2
    assert form == s * (A1 * A2 + A0 * A2 + A0 * A1) + A0 * A1 * A2


def test_jump_curve_matches_expansion(rng):
    for n in range(1, 7):
        datum = HulsbergenDatum(random_configuration(rng, n), random_coefficients(rng, n + 1))
        ours = jump_curve_form(datum)
        expr, syms = expanded_oracle(datum)
        assert sympy.expand(ours.to_sympy(syms).as_expr() - expr) == 0


@given(st.integers(2, 6), st.integers(0, 10 ** 6))
def test_degree_and_secants(n, seed):
    rng = random.Random(seed)
    datum = HulsbergenDatum(random_configuration(rng, n), random_coefficients(rng, n + 1))
    curve = jump_curve(datum)
    assert curve.degree == n
    assert secant_vanishing(datum)
    assert datum.config.chern_data().c2 == n
    assert euler_characteristic(datum.config.chern_data()) == 2 - n


def test_jump_form_never_degenerate_for_distinct_points(rng):
    # the products prod_{j != i} L_j are independent when the points are distinct
    for n in range(1, 6):
        config = random_configuration(rng, n)
        for i in range(n + 1):
            cs = [0] * (n + 1)
            cs[i] = 1
            assert not jump_curve_form(HulsbergenDatum(config, tuple(cs))).is_zero()


def test_all_zero_coefficients_rejected():
    with pytest.raises(ValueError):
        HulsbergenDatum(TRIANGLE, (0, 0, 0))
    with pytest.raises(ValueError):
        HulsbergenDatum(TRIANGLE, (1, 1))


def test_configuration_validation():
    with pytest.raises(ValueError):
        PointConfiguration(((1, 0, 0), (2, 0, 0)))
    with pytest.raises(ValueError):
        PointConfiguration(((1, 0, 0),))
    with pytest.raises(ValueError):
        PointConfiguration(((0, 0, 0), (1, 0, 0)))


def test_stability_of_configuration():
    assert is_stable_config(TRIANGLE)
    assert not is_stable_config(PointConfiguration(((1, 0, 0), (0, 1, 0), (1, 1, 0))))


def test_equivariance(rng):
    for n in (2, 3, 4):
        datum = HulsbergenDatum(random_configuration(rng, n), random_coefficients(rng, n + 1))
        for _ in range(4):
            assert equivariance_check(datum, random_sl(3, rng))


def test_equivariance_rejects_bad_matrices():
    datum = HulsbergenDatum(TRIANGLE, (1, 1, 1))
    with pytest.raises(ValueError):
        equivariance_check(datum, RationalMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    with pytest.raises(ValueError):
        equivariance_check(datum, RationalMatrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_dual_action_preserves_incidence(rng):
    g = random_sl(3, rng)
    x = (1, 2, 3)
    line = DualLinePoint.through(x, (0, 1, -1))
    moved = dual_action(g) @ line.coords
    assert DualLinePoint(moved).contains(g @ x)


def test_transformed_form_is_the_moved_curve(rng):
    datum = HulsbergenDatum(random_configuration(rng, 3), random_coefficients(rng, 4))
    g = random_sl(3, rng)
    form = jump_curve_form(datum)
    moved = transformed_jump_form(form, g)
    for _ in range(5):
        l = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        assert moved.evaluate(dual_action(g) @ l) == form.evaluate(l)


def test_splitting_examples():
    # six points on z = 0 and one more
    pts = tuple((1, k, 0) for k in range(6)) + ((0, 0, 1),)
    config = PointConfiguration(pts)
    line = DualLinePoint((0, 0, 1))
    assert points_on_line(config, line) == 6
    assert splitting_on_line(config, line) == (5, -5)
    assert splitting_on_line(config, DualLinePoint((1, 1, 1))) == (0, 0)
    assert splitting_on_line(TRIANGLE, DualLinePoint((0, 0, 1))) == (1, -1)


def test_rank2_unstable_with_certificate():
    pts = tuple((1, k, 0) for k in range(6)) + ((0, 0, 1),)
    config = PointConfiguration(pts)
    v = rank2_unstable_check(config, DualLinePoint((0, 0, 1)), (1,) * 7)
    assert v.unstable and v.verdict == "unstable"
    assert (v.d, v.n) == (5, 6)
    assert v.jump_curve_multiplicity >= 5
    assert v.curve_certificate is not None and v.curve_certificate.mu_value < 0
    assert v.curve_certificate.verify(jump_curve(HulsbergenDatum(config, (1,) * 7)))


def test_rank2_boundary_is_inconclusive():
    # d = 2 with n = 3: 3d = 2n exactly
    config = PointConfiguration(((1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)))
    v = rank2_unstable_check(config, DualLinePoint((0, 0, 1)))
    assert v.d == 2 and not v.unstable and v.verdict == "inconclusive"


@given(st.integers(2, 6), st.integers(0, 10 ** 6))
def test_multiplicity_bounds_splitting(n, seed):
    rng = random.Random(seed)
    k = rng.randint(2, n + 1)
    line = DualLinePoint(tuple(rng.randint(-3, 3) or 1 for _ in range(3)))
    # k points on the line, the rest random
    basis = RationalMatrix([line.coords]).kernel().columns()
    seen, pts = set(), []
    while len(pts) < k:
        s, t = rng.randint(-5, 5), rng.randint(-5, 5)
        p = tuple(s * a + t * b for a, b in zip(*basis))
        if any(p) and ProjectivePoint(p) not in seen:
            seen.add(ProjectivePoint(p))
            pts.append(p)
    while len(pts) < n + 1:
        p = tuple(rng.randint(-5, 5) for _ in range(3))
        if any(p) and not line.contains(p) and ProjectivePoint(p) not in seen:
            seen.add(ProjectivePoint(p))
            pts.append(p)
    config = PointConfiguration(tuple(pts))
    datum = HulsbergenDatum(config, random_coefficients(rng, n + 1))
    d, _ = splitting_on_line(config, line)
    assert d == k - 1
    assert multiplicity_at(PlaneCurve(jump_curve_form(datum)), line.coords) >= d


def test_richest_line():
    pts = ((1, 0, 0), (1, 1, 0), (1, 2, 0), (0, 0, 1), (1, 1, 1))
    line = richest_line(PointConfiguration(pts))
    assert ProjectivePoint(line.coords) == ProjectivePoint((0, 0, 1))
