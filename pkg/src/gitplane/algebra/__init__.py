"""Exact rational arithmetic, ternary forms and subspace linear algebra.

Rationals are :class:`fractions.Fraction` throughout.
"""

from fractions import Fraction as Rational

from ._backend import BACKEND
from .linalg import RationalMatrix, Subspace, nullspace, random_sl, subspace_intersect
from .polynomial import (
    HomogeneousPolynomial,
    X,
    Y,
    Z,
    det_linear_matrix,
    higher_partials,
    partials,
    resultant_eliminate,
    scalar_det,
    substitute,
)

__all__ = [
    "BACKEND",
    "HomogeneousPolynomial",
    "Rational",
    "RationalMatrix",
    "Subspace",
    "X",
    "Y",
    "Z",
    "det_linear_matrix",
    "higher_partials",
    "nullspace",
    "partials",
    "random_sl",
    "resultant_eliminate",
    "scalar_det",
    "subspace_intersect",
    "substitute",
]
