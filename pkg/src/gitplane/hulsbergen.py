"""Rank-2 bundles with c1 = 0, c2 = n from n+1 points of P^2 (Hulsbergen /
Serre construction).

The extension class is given by coefficients ``a_1..a_{n+1}``; its curve of
jump lines in the dual plane is ``sum_i a_i prod_{j != i} L_j`` where ``L_j``
is the pairing with the j-th point.  The coefficients refer to the stored
coordinate representatives of the points, which are therefore kept exactly
as given and transformed without rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.linalg import RationalMatrix
from .algebra.polynomial import HomogeneousPolynomial, substitute
from .curves import (
    InstabilityCertificate,
    PlaneCurve,
    ProjectivePoint,
    check_point_instability,
    multiplicity_at,
)
from .sheaves import ChernData

DUAL_NAMES = ("a0", "a1", "a2")

Triple = tuple[Fraction, Fraction, Fraction]


class DegenerateJumpCurve(ValueError):
    """The jump-curve formula cancelled to the zero form."""


def _triple(x) -> Triple:
    t = tuple(Fraction(c) for c in x)
    if len(t) != 3:
        raise ValueError("expected three coordinates")
    if not any(t):
        raise ValueError("(0:0:0) is not a point")
    return t


@dataclass(frozen=True)
class PointConfiguration:
    """Distinct points of P^2, stored as the coordinate triples supplied."""

    points: tuple[Triple, ...]

    def __post_init__(self):
        pts = tuple(_triple(p) for p in self.points)
        if len(pts) < 2:
            raise ValueError("a configuration needs at least two points")
        if len({ProjectivePoint(p) for p in pts}) != len(pts):
            raise ValueError("configuration points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        """c2 of the associated bundle."""
        return len(self.points) - 1

    def chern_data(self) -> ChernData:
        return ChernData(2, 0, self.n)

    def transform(self, g: RationalMatrix) -> PointConfiguration:
        return PointConfiguration(tuple(g @ p for p in self.points))


@dataclass(frozen=True)
class HulsbergenDatum:
    config: PointConfiguration
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coefficients)
        if len(cs) != len(self.config.points):
            raise ValueError("one coefficient per point is required")
        if not any(cs):
            raise ValueError("coefficients must not all vanish")
        object.__setattr__(self, "coefficients", cs)


@dataclass(frozen=True)
class DualLinePoint:
    """A line of P^2 as a point of the dual plane: ``c0 x + c1 y + c2 z = 0``."""

    coords: Triple

    def __post_init__(self):
        object.__setattr__(self, "coords", _triple(self.coords))

    def contains(self, x: Sequence) -> bool:
        return sum(a * Fraction(b) for a, b in zip(self.coords, x)) == 0

    @classmethod
    def through(cls, x: Sequence, y: Sequence) -> DualLinePoint:
        """The line joining two distinct points (cross product)."""
        x, y = _triple(x), _triple(y)
        return cls((x[1] * y[2] - x[2] * y[1],
                    x[2] * y[0] - x[0] * y[2],
                    x[0] * y[1] - x[1] * y[0]))


def is_stable_config(config: PointConfiguration) -> bool:
    """Stable iff the points are not all on one line."""
    return RationalMatrix(config.points).rank() == 3


def dual_line(x: Sequence) -> HomogeneousPolynomial:
    """``x0 a0 + x1 a1 + x2 a2``, the equation of the lines through ``x``."""
    return HomogeneousPolynomial.linear(_triple(x))


def jump_curve_form(datum: HulsbergenDatum) -> HomogeneousPolynomial:
    """``sum_i a_i prod_{j != i} L_j``; may be the zero form."""
    lines = [dual_line(p) for p in datum.config.points]
    n = datum.config.n
    # prefix/suffix products give every prod_{j != i} in linear time
    prefix = [HomogeneousPolynomial.constant(1)]
    for L in lines:
        prefix.append(prefix[-1] * L)
    suffix = [HomogeneousPolynomial.constant(1)]
    for L in reversed(lines):
        suffix.append(suffix[-1] * L)
    suffix.reverse()
    total = HomogeneousPolynomial.zero(n)
    for i, a in enumerate(datum.coefficients):
        if a:
            total = total + prefix[i] * suffix[i + 1] * a
    return total


def jump_curve(datum: HulsbergenDatum) -> PlaneCurve:
    """The curve of jump lines, of degree n = c2, in dual coordinates."""
    form = jump_curve_form(datum)
    if form.is_zero():
        raise DegenerateJumpCurve(
            "jump-curve formula is identically zero for this configuration and coefficients")
    return PlaneCurve(form)


def points_on_line(config: PointConfiguration, line: DualLinePoint) -> int:
    return sum(1 for p in config.points if line.contains(p))


def splitting_on_line(config: PointConfiguration, line: DualLinePoint) -> tuple[int, int]:
    """``(d, -d)`` where d + 1 points of the configuration lie on the line
    (``(0, 0)`` when at most one does)."""
    k = points_on_line(config, line)
    d = max(k - 1, 0)
    return d, -d


@dataclass(frozen=True)
class Rank2Verdict:
    unstable: bool
    d: int
    n: int
    line: DualLinePoint
    multiplicity_lower_bound: int
    jump_curve_multiplicity: int | None = None
    curve_certificate: InstabilityCertificate | None = None

    @property
    def verdict(self) -> str:
        return "unstable" if self.unstable else "inconclusive"


def rank2_unstable_check(config: PointConfiguration, line: DualLinePoint,
                         coefficients: Sequence | None = None) -> Rank2Verdict:
    """Unstable when the splitting degree d on ``line`` exceeds 2n/3.

    The dual point of the line then has multiplicity >= d on the jump curve.
    With ``coefficients`` the jump curve is built and that multiplicity and
    the matching curve certificate are computed as well.
    """
    d, _ = splitting_on_line(config, line)
    n = config.n
    unstable = 3 * d > 2 * n
    mult = cert = None
    if coefficients is not None:
        curve = jump_curve(HulsbergenDatum(config, tuple(coefficients)))
        dual_pt = ProjectivePoint(line.coords)
        mult = multiplicity_at(curve, dual_pt)
        if mult < d:  # pragma: no cover - each f_i keeps >= d vanishing factors
            raise AssertionError(f"jump curve multiplicity {mult} below splitting degree {d}")
        cert = check_point_instability(curve, dual_pt) if unstable else None
    return Rank2Verdict(unstable, d, n, line, d, mult, cert)


def richest_line(config: PointConfiguration) -> DualLinePoint:
    """A line through the largest number of configuration points."""
    best, best_k = None, -1
    pts = config.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            line = DualLinePoint.through(pts[i], pts[j])
            k = points_on_line(config, line)
            if k > best_k:
                best, best_k = line, k
    return best


def dual_action(g: RationalMatrix) -> RationalMatrix:
    """Lines move by the inverse transpose of the point action."""
    return g.inverse().T


def transformed_jump_form(form: HomogeneousPolynomial, g: RationalMatrix) -> HomogeneousPolynomial:
    """The image of a dual-plane curve when points move by ``g``: a line ``l``
    goes to ``g^{-T} l``, so the new equation is ``l -> form(g^T l)``."""
    return substitute(form, dual_action(g).inverse())


def equivariance_check(datum: HulsbergenDatum, g: RationalMatrix) -> bool:
    """jump curve of ``g Z`` is proportional to the dual transform of the
    jump curve of ``Z`` (same coefficients)."""
    if g.shape != (3, 3):
        raise ValueError("g must be 3x3")
    det = g.det()
    if det == 0:
        raise ValueError("g is singular")
    if det != 1:
        raise ValueError("g must have determinant 1")
    moved = HulsbergenDatum(datum.config.transform(g), datum.coefficients)
    return jump_curve_form(moved).is_proportional_to(
        transformed_jump_form(jump_curve_form(datum), g))


def secant_vanishing(datum: HulsbergenDatum) -> bool:
    """Every line through two configuration points lies on the jump curve."""
    form = jump_curve_form(datum)
    pts = datum.config.points
    return all(form.evaluate(DualLinePoint.through(pts[i], pts[j]).coords) == 0
               for i in range(len(pts)) for j in range(i + 1, len(pts)))
