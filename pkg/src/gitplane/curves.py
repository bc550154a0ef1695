"""Plane curves under SL(3): multiplicities, Hilbert-Mumford weights and the
multiplicity > 2n/3 instability certificate.

A diagonal one-parameter subgroup with weights ``(wX, wY, wZ)`` multiplies a
monomial ``X^a Y^b Z^c`` by ``t^(a wX + b wY + c wZ)``, and
``mu(C, lambda) = -min`` of those weights over the monomials of ``C``.
A negative value certifies instability.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import sympy

from .algebra import univariate as uni
from .algebra.linalg import RationalMatrix
from .algebra.polynomial import (
    HomogeneousPolynomial,
    higher_partials,
    partials,
    resultant_eliminate,
    substitute,
)

CANONICAL_WEIGHTS = (1, 1, -2)

UNSTABLE = "unstable"
STABLE_NONSINGULAR = "stable (via nonsingularity theorem)"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^2, stored with first nonzero coordinate equal to 1."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coords)
        if len(cs) != 3:
            raise ValueError("a point of P^2 has three coordinates")
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise ValueError("(0:0:0) is not a projective point")
        object.__setattr__(self, "coords", tuple(c / lead for c in cs))

    @classmethod
    def of(cls, x, y, z) -> ProjectivePoint:
        return cls((x, y, z))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def integer_coords(self) -> tuple[int, int, int]:
        """Primitive integer representative."""
        d = 1
        for c in self.coords:
            d = d * c.denominator // gcd(d, c.denominator)
        ints = [int(c * d) for c in self.coords]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return tuple(x // g for x in ints)

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PlaneCurve:
    """The curve ``form = 0``; the form is taken up to a nonzero scalar."""

    form: HomogeneousPolynomial

    def __post_init__(self):
        if self.form.is_zero():
            raise ValueError("the zero form does not define a curve")
        if self.form.degree < 1:
            raise ValueError("a plane curve needs degree >= 1")

    @property
    def degree(self) -> int:
        return self.form.degree

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.form.is_proportional_to(other.form)

    def __hash__(self):
        return hash(self.form.primitive())

    def contains(self, point: ProjectivePoint | Sequence) -> bool:
        return self.form.evaluate(tuple(point)) == 0

    def __str__(self):
        return f"{self.form} = 0"


@dataclass(frozen=True)
class DiagonalOnePS:
    """A one-parameter subgroup of SL(3), diagonal in the coordinates given by
    ``frame`` (the form is replaced by ``substitute(form, frame)`` first)."""

    weights: tuple[int, int, int]
    frame: RationalMatrix | None = None

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != 3:
            raise ValueError("three weights are required")
        if sum(w) != 0:
            raise ValueError(f"weights {w} do not sum to zero")
        if not any(w):
            raise ValueError("the trivial subgroup has no weights to test")
        object.__setattr__(self, "weights", w)
        if self.frame is not None:
            if self.frame.shape != (3, 3) or self.frame.det() == 0:
                raise ValueError("frame must be an invertible 3x3 matrix")

    def with_frame(self, frame: RationalMatrix | None) -> DiagonalOnePS:
        return DiagonalOnePS(self.weights, frame)


@dataclass(frozen=True)
class InstabilityCertificate:
    witness_point: ProjectivePoint
    multiplicity: int
    one_ps: DiagonalOnePS
    mu_value: int
    degree: int

    def __post_init__(self):
        if self.mu_value >= 0:
            raise ValueError("a certificate needs mu < 0")
        if 3 * self.multiplicity <= 2 * self.degree:
            raise ValueError("certificate multiplicity does not exceed 2n/3")

    def verify(self, curve: PlaneCurve) -> bool:
        """Recompute every claim against ``curve``."""
        if curve.degree != self.degree:
            return False
        frame = self.one_ps.frame
        if frame is None or frame.det() != 1:
            return False
        # the frame must carry (0:0:1) to the witness
        if ProjectivePoint(frame @ (0, 0, 1)) != self.witness_point:
            return False
        return (multiplicity_at(curve, self.witness_point) == self.multiplicity
                and 3 * self.multiplicity > 2 * self.degree
                and mu_curve(curve, self.one_ps) == self.mu_value
                and self.mu_value < 0)


# ---------------------------------------------------------------------------
# coordinate normalisation


def move_point_matrix(point: ProjectivePoint | Sequence) -> RationalMatrix:
    """A determinant-1 matrix ``M`` with ``M (0,0,1)^T`` proportional to ``point``.

    Under ``substitute(f, M)`` the point is moved to ``(0:0:1)``.  The
    identity column at the last nonzero coordinate is swapped out for the
    point; the first column absorbs the determinant.
    """
    p = tuple(Fraction(c) for c in point)
    pivot = max(i for i in range(3) if p[i])
    cols = [[Fraction(int(i == j)) for i in range(3)] for j in range(3)]
    cols[pivot] = cols[2]
    cols[2] = list(p)
    M = RationalMatrix.from_columns(cols, 3)
    d = M.det()
    cols[0] = [c / d for c in cols[0]]
    return RationalMatrix.from_columns(cols, 3)


# ---------------------------------------------------------------------------
# multiplicities and weights


def multiplicity_at(curve: PlaneCurve, point: ProjectivePoint | Sequence) -> int:
    point = point if isinstance(point, ProjectivePoint) else ProjectivePoint(tuple(point))
    g = substitute(curve.form, move_point_matrix(point))
    return min(a + b for (a, b, _c) in g.terms)


def monomial_weight(exponents: Sequence[int], one_ps: DiagonalOnePS | Sequence[int]) -> int:
    w = one_ps.weights if isinstance(one_ps, DiagonalOnePS) else tuple(one_ps)
    return sum(e * x for e, x in zip(exponents, w))


def mu_curve(curve: PlaneCurve, one_ps: DiagonalOnePS) -> int:
    form = curve.form
    if form.is_zero():
        raise ValueError("mu of the zero form is undefined")
    if one_ps.frame is not None:
        form = substitute(form, one_ps.frame)
    return -min(monomial_weight(e, one_ps) for e in form.terms)


def check_point_instability(curve: PlaneCurve, point: ProjectivePoint | Sequence) \
        -> InstabilityCertificate | None:
    """Certificate when ``point`` has multiplicity > 2n/3, else ``None``
    (the criterion is only sufficient)."""
    point = point if isinstance(point, ProjectivePoint) else ProjectivePoint(tuple(point))
    m = multiplicity_at(curve, point)
    n = curve.degree
    if 3 * m <= 2 * n:
        return None
    lam = DiagonalOnePS(CANONICAL_WEIGHTS, move_point_matrix(point))
    mu = mu_curve(curve, lam)
    if mu >= 0:  # cannot happen when every monomial has a+b >= m > 2n/3
        raise AssertionError(f"multiplicity {m} > 2n/3 but mu = {mu}")
    return InstabilityCertificate(point, m, lam, mu, n)


# ---------------------------------------------------------------------------
# common zeros by elimination


@dataclass
class ZeroLocus:
    """Rational common zeros of a list of forms.

    ``non_isolated`` is set when the forms share a curve component; the
    rational lines of that component are listed in ``lines`` (as linear
    forms) and contribute two spanning points each to ``points``.
    """

    points: list[ProjectivePoint] = field(default_factory=list)
    non_isolated: bool = False
    lines: list[HomogeneousPolynomial] = field(default_factory=list)
    components: list[HomogeneousPolynomial] = field(default_factory=list)


class SingularPoints(list):
    """List of rational singular points carrying a ``non_isolated`` flag."""

    def __init__(self, points=(), non_isolated=False, lines=()):
        super().__init__(points)
        self.non_isolated = non_isolated
        self.lines = list(lines)


def _small_points() -> Iterable[tuple[int, int, int]]:
    yield from ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))
    for s in itertools.count(1):
        for p in itertools.product(range(-s, s + 1), repeat=3):
            if max(map(abs, p)) == s:
                yield p


def point_off(f: HomogeneousPolynomial) -> tuple[int, int, int]:
    """First small integer point where the nonzero form ``f`` does not vanish."""
    for p in _small_points():
        if f.evaluate(p) != 0:
            return p
    raise AssertionError("unreachable")


def _binary_to_uni(f: HomogeneousPolynomial) -> tuple[int, list[Fraction]]:
    """Split a form in X, Y as ``Y^k * g`` and return ``(k, g(x, 1))``."""
    k = min(e[1] for e in f.terms)
    coeffs = [Fraction(0)] * (f.degree - k + 1)
    for (a, b, _c), v in f.items():
        coeffs[a] = v
    return k, uni.trim(coeffs)


def _binarygcd(forms: Sequence[HomogeneousPolynomial]) -> tuple[int, list[Fraction]] | None:
    """gcd of nonzero binary forms as ``(power of Y, dehomogenised part)``;
    ``None`` when every input is zero."""
    result = None
    for f in forms:
        if f.is_zero():
            continue
        k, g = _binary_to_uni(f)
        if result is None:
            result = (k, uni.monic(g))
        else:
            result = (min(result[0], k), uni.gcd(result[1], g))
        if result[0] == 0 and len(result[1]) == 1:
            break
    return result


def _eliminate_z(g1: HomogeneousPolynomial, h: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """A binary form vanishing exactly on the projections from (0:0:1) of
    the common zeros of ``g1`` and ``h`` (``g1`` monic-constant in Z)."""
    if h.degree_in(2) <= 0:
        return h
    return resultant_eliminate(g1, h, 2)


def _equalize(forms: Sequence[HomogeneousPolynomial]) -> list[HomogeneousPolynomial]:
    top = max(f.degree for f in forms)
    out = []
    for f in forms:
        e = top - f.degree
        if e == 0:
            out.append(f)
        else:
            out.extend(f * HomogeneousPolynomial.monomial(m) for m in
                       ((e, 0, 0), (0, e, 0), (0, 0, e)))
    return out


def _exact_projection(g1: HomogeneousPolynomial, rest: Sequence[HomogeneousPolynomial]):
    """gcd over t of Res_Z(g1, sum t^i rest[i]): vanishes at (x:y) iff all
    forms share a zero above it."""
    rest = _equalize(rest)
    span = g1.degree_in(2) * (len(rest) - 1)
    evals = []
    for t in range(span + 1):
        h = sum((r * Fraction(t) ** i for i, r in enumerate(rest)),
                HomogeneousPolynomial.zero(rest[0].degree))
        if h.is_zero():
            continue
        evals.append(_eliminate_z(g1, h))
    return _binarygcd(evals)


def _sympygcd(forms: Sequence[HomogeneousPolynomial]) -> HomogeneousPolynomial:
    polys = [f.to_sympy() for f in forms]
    g = polys[0]
    for p in polys[1:]:
        g = sympy.gcd(g, p)
    return HomogeneousPolynomial.from_sympy(sympy.Poly(g, *polys[0].gens))


def _line_points(line: HomogeneousPolynomial) -> list[ProjectivePoint]:
    row = [line.coefficient(u) for u in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return [ProjectivePoint(v) for v in RationalMatrix([row]).kernel().columns()]


def _dedupe(points: Iterable[ProjectivePoint]) -> list[ProjectivePoint]:
    seen, out = set(), []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def common_rational_zeros(forms: Sequence[HomogeneousPolynomial]) -> ZeroLocus:
    """All rational points where every form vanishes.

    Complete for rational points: each is found through a rational root of
    an eliminant and then verified by substitution.
    """
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("every point is a zero of the zero form")
    if any(f.degree == 0 for f in forms):
        return ZeroLocus()
    common = _sympygcd(forms) if len(forms) > 1 else forms[0]
    if common.degree >= 1:
        return _with_curve_component(forms, common)
    center = point_off(forms[0])
    M = move_point_matrix(center)
    gs = [substitute(f, M) for f in forms]
    g1, rest = gs[0], gs[1:]
    proj = _binarygcd([_eliminate_z(g1, h) for h in rest])
    if proj is None:
        proj = _exact_projection(g1, rest)
    if proj is None:  # pragma: no cover - excluded by the gcd check
        raise AssertionError("forms without common factor have finitely many zeros")
    k, body = proj
    xy = [(Fraction(1), Fraction(0))] if k else []
    xy += [(x, Fraction(1)) for x in uni.rational_roots(body)] if len(body) > 1 else []
    found = []
    for x, y in xy:
        fibre = None
        for g in gs:
            coeffs = [c.evaluate((x, y, 1)) for c in g.coefficients_in(2)]
            fibre = uni.trim(coeffs) if fibre is None else uni.gcd(fibre, coeffs)
        if not fibre or len(fibre) == 1:
            continue
        for z in uni.rational_roots(fibre):
            q = M @ (x, y, z)
            if all(f.evaluate(q) == 0 for f in forms):
                found.append(ProjectivePoint(q))
    return ZeroLocus(points=_dedupe(found))


def _with_curve_component(forms, common: HomogeneousPolynomial) -> ZeroLocus:
    factors = sympy.factor_list(common.to_sympy())[1]
    components = [HomogeneousPolynomial.from_sympy(sympy.Poly(p, *common.to_sympy().gens))
                  for p, _ in factors]
    lines = [c for c in components if c.degree == 1]
    points = [p for line in lines for p in _line_points(line)]
    quotients = []
    for f in forms:
        q, r = sympy.div(f.to_sympy(), common.to_sympy())
        assert r.is_zero
        quotients.append(HomogeneousPolynomial.from_sympy(
            sympy.Poly(q, *common.to_sympy().gens), f.degree - common.degree))
    if all(q.degree >= 1 for q in quotients):
        points += common_rational_zeros(quotients).points
    return ZeroLocus(points=_dedupe(points), non_isolated=True, lines=lines,
                     components=components)


def find_rational_singular_points(curve: PlaneCurve) -> SingularPoints:
    """Rational points where all three partials vanish.

    For a non-reduced curve the singular locus contains a curve; then the
    result carries ``non_isolated = True`` and lists two spanning points of
    each rational line in it, plus any isolated rational singular points.
    """
    if curve.degree < 2:
        return SingularPoints()
    locus = common_rational_zeros(list(partials(curve.form)))
    return SingularPoints(locus.points, locus.non_isolated, locus.lines)


def rational_points_of_multiplicity(curve: PlaneCurve, m: int) -> ZeroLocus:
    """Rational points of multiplicity >= m (common zeros of the order m-1
    partial derivatives)."""
    if m <= 0:
        raise ValueError("multiplicity bound must be positive")
    if m > curve.degree:
        return ZeroLocus()
    if m == 1:
        return common_rational_zeros([curve.form])
    return common_rational_zeros(higher_partials(curve.form, m - 1))


def is_nonsingular(curve: PlaneCurve) -> bool:
    """No common zero of the partials over the algebraic closure.

    Projects from a rational point off the first partial; the partials meet
    iff ``gcd_t Res_Z(f_X, f_Y + t f_Z)`` is a nonconstant binary form.
    """
    if curve.degree == 1:
        return True
    ps = list(partials(curve.form))
    if any(p.is_zero() for p in ps):
        # two plane curves of positive degree always meet
        return False
    M = move_point_matrix(point_off(ps[0]))
    g1, g2, g3 = (substitute(p, M) for p in ps)
    quick = _binarygcd([_eliminate_z(g1, g2), _eliminate_z(g1, g3)])
    if quick is None:
        return False
    if quick[0] == 0 and len(quick[1]) == 1:
        return True
    exact = _exact_projection(g1, [g2, g3])
    return exact is not None and exact[0] == 0 and len(exact[1]) == 1


# ---------------------------------------------------------------------------
# combined analysis


@dataclass
class CurveAnalysis:
    curve: PlaneCurve
    verdict: str
    certificate: InstabilityCertificate | None
    candidates: list[ProjectivePoint]
    nonsingular: bool | None


def instability_threshold(n: int) -> int:
    """Smallest multiplicity exceeding 2n/3."""
    return 2 * n // 3 + 1


def analyze_curve(curve: PlaneCurve) -> CurveAnalysis:
    """Search rational points of multiplicity > 2n/3, then fall back on the
    nonsingularity theorem (n >= 3)."""
    n = curve.degree
    locus = rational_points_of_multiplicity(curve, instability_threshold(n))
    for p in locus.points:
        cert = check_point_instability(curve, p)
        if cert is not None:
            return CurveAnalysis(curve, UNSTABLE, cert, locus.points, None)
    smooth = is_nonsingular(curve)
    verdict = STABLE_NONSINGULAR if smooth and n >= 3 else INCONCLUSIVE
    return CurveAnalysis(curve, verdict, None, locus.points, smooth)
