"""JSON encodings for exact data.

Rationals are ``{"num": p, "den": q}`` (a ``[p, q]`` pair or a bare integer
is also accepted on input).  Floats are always rejected.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .algebra.linalg import RationalMatrix, Subspace
from .algebra.polynomial import HomogeneousPolynomial
from .curves import DiagonalOnePS, InstabilityCertificate, PlaneCurve, ProjectivePoint
from .hulsbergen import HulsbergenDatum, PointConfiguration
from .monads import MonadPair


class InputError(ValueError):
    """Malformed or inconsistent input data."""


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what}: expected an integer, got {x!r}")
    return x


def frac_from_json(x) -> Fraction:
    if isinstance(x, dict):
        if set(x) != {"num", "den"}:
            raise InputError(f"rational record needs exactly num and den: {x!r}")
        num, den = _int(x["num"], "num"), _int(x["den"], "den")
    elif isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise InputError(f"rational pair needs two entries: {x!r}")
        num, den = _int(x[0], "num"), _int(x[1], "den")
    elif isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError as exc:
            raise InputError(f"cannot parse rational {x!r}") from exc
    else:
        num, den = _int(x, "rational"), 1
    if den == 0:
        raise InputError("zero denominator")
    return Fraction(num, den)


def frac_to_json(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def frac_text(x) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# polynomials and curves


def poly_to_json(f: HomogeneousPolynomial) -> list[dict]:
    return [{"a": a, "b": b, "c": c, "num": v.numerator, "den": v.denominator}
            for (a, b, c), v in sorted(f.items(), reverse=True)]


def poly_from_json(records: Sequence[dict], degree: int) -> HomogeneousPolynomial:
    if not isinstance(records, list):
        raise InputError("polynomial terms must be a list")
    degree = _int(degree, "degree")
    if degree < 0:
        raise InputError("degree must be non-negative")
    terms: dict[tuple[int, int, int], Fraction] = {}
    for rec in records:
        if not isinstance(rec, dict) or not {"a", "b", "c", "num"} <= set(rec):
            raise InputError(f"bad term record {rec!r}")
        e = tuple(_int(rec[k], k) for k in "abc")
        if min(e) < 0 or sum(e) != degree:
            raise InputError(f"exponents {e} do not sum to degree {degree}")
        terms[e] = terms.get(e, Fraction(0)) + frac_from_json(
            {"num": rec["num"], "den": rec.get("den", 1)})
    return HomogeneousPolynomial(degree, terms)


def curve_to_json(curve: PlaneCurve) -> dict:
    return {"degree": curve.degree, "terms": poly_to_json(curve.form)}


def curve_from_json(data: dict) -> PlaneCurve:
    if not isinstance(data, dict) or "degree" not in data or "terms" not in data:
        raise InputError("curve file needs 'degree' and 'terms'")
    try:
        return PlaneCurve(poly_from_json(data["terms"], data["degree"]))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# points, vectors, matrices


def point_to_json(p) -> dict:
    p = ProjectivePoint(tuple(p))
    return {k: [c.numerator, c.denominator] for k, c in zip("xyz", p.coords)}


def point_from_json(data) -> ProjectivePoint:
    if isinstance(data, dict):
        if set(data) != {"x", "y", "z"}:
            raise InputError(f"point needs keys x, y, z: {data!r}")
        coords = [frac_from_json(data[k]) for k in "xyz"]
    else:
        coords = vector_from_json(data, 3)
    try:
        return ProjectivePoint(tuple(coords))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def vector_to_json(v: Sequence) -> list:
    return [frac_to_json(x) for x in v]


def vector_from_json(data, length: int | None = None) -> list[Fraction]:
    if not isinstance(data, (list, tuple)):
        raise InputError(f"expected a list, got {data!r}")
    out = [frac_from_json(x) for x in data]
    if length is not None and len(out) != length:
        raise InputError(f"expected {length} entries, got {len(out)}")
    return out


def parse_triple(text: str) -> tuple[Fraction, Fraction, Fraction]:
    """``"a,b,c"`` with integer or ``p/q`` entries."""
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 3:
        raise InputError(f"expected three comma-separated values, got {text!r}")
    try:
        out = tuple(Fraction(t) for t in parts)
    except ValueError as exc:
        raise InputError(f"cannot parse {text!r}") from exc
    if not any(out):
        raise InputError("the zero vector is not allowed here")
    return out


def matrix_to_json(M: RationalMatrix) -> list[list[dict]]:
    return [[frac_to_json(x) for x in row] for row in M.rows]


def matrix_from_json(data, ncols: int | None = None) -> RationalMatrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("a matrix is a list of rows")
    rows = [[frac_from_json(x) for x in r] for r in data]
    if not rows and ncols is None:
        raise InputError("empty matrix without a column count")
    try:
        return RationalMatrix(rows, ncols)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def subspace_to_json(S: Subspace) -> list[list[dict]]:
    return [vector_to_json(v) for v in S.vectors()]


def subspace_from_json(data, ambient_dim: int) -> Subspace:
    if not isinstance(data, list):
        raise InputError("a subspace is a list of spanning vectors")
    try:
        return Subspace.span([vector_from_json(v, ambient_dim) for v in data], ambient_dim)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# certificates


def certificate_to_json(cert: InstabilityCertificate) -> dict:
    return {
        "witness_point": point_to_json(cert.witness_point),
        "multiplicity": cert.multiplicity,
        "weights": list(cert.one_ps.weights),
        "frame": matrix_to_json(cert.one_ps.frame) if cert.one_ps.frame is not None else None,
        "mu": cert.mu_value,
        "degree": cert.degree,
    }


def certificate_from_json(data: dict) -> InstabilityCertificate:
    try:
        frame = matrix_from_json(data["frame"]) if data.get("frame") is not None else None
        return InstabilityCertificate(
            point_from_json(data["witness_point"]),
            _int(data["multiplicity"], "multiplicity"),
            DiagonalOnePS(tuple(_int(w, "weight") for w in data["weights"]), frame),
            _int(data["mu"], "mu"),
            _int(data["degree"], "degree"),
        )
    except KeyError as exc:
        raise InputError(f"certificate is missing {exc}") from exc
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# module file formats


def config_to_json(datum: HulsbergenDatum) -> dict:
    return {"points": [vector_to_json(p) for p in datum.config.points],
            "coefficients": [[c.numerator, c.denominator] for c in datum.coefficients]}


def config_from_json(data: dict) -> HulsbergenDatum:
    if not isinstance(data, dict) or "points" not in data:
        raise InputError("configuration file needs 'points'")
    points = [tuple(vector_from_json(p, 3)) for p in data["points"]]
    coeffs = data.get("coefficients")
    try:
        config = PointConfiguration(tuple(points))
        if coeffs is None:
            coeffs = [1] * len(points)
        return HulsbergenDatum(config, tuple(frac_from_json(c) for c in coeffs))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def monad_to_json(M: MonadPair) -> dict:
    out: dict[str, Any] = {"n": M.n, "r": M.r, "A": [matrix_to_json(a) for a in M.A]}
    if M.B is not None:
        out["B"] = [matrix_to_json(b) for b in M.B]
    return out


def monad_from_json(data: dict) -> MonadPair:
    if not isinstance(data, dict) or not {"n", "r", "A"} <= set(data):
        raise InputError("monad file needs 'n', 'r' and 'A'")
    n, r = _int(data["n"], "n"), _int(data["r"], "r")
    if not isinstance(data["A"], list) or len(data["A"]) != 3:
        raise InputError("'A' must hold three matrices")
    A = tuple(matrix_from_json(a, n) for a in data["A"])
    B = data.get("B")
    if B is not None:
        if not isinstance(B, list) or len(B) != 3:
            raise InputError("'B' must hold three matrices")
        B = tuple(matrix_from_json(b, n) for b in B)
    try:
        return MonadPair(n, r, A, B)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
