"""GIT stability tools for plane curves and sheaves on the projective plane.

Everything is exact: rationals are ``fractions.Fraction`` and linear algebra
runs through fraction-free elimination (compiled when available).
"""

__version__ = "0.1.0"

from .algebra import BACKEND, HomogeneousPolynomial, RationalMatrix, Subspace
from .curves import PlaneCurve, ProjectivePoint, analyze_curve
from .hulsbergen import HulsbergenDatum, PointConfiguration
from .monads import LineFunctional, MonadPair, PairOnePS
from .sheaves import ChernData

__all__ = [
    "BACKEND",
    "ChernData",
    "HomogeneousPolynomial",
    "HulsbergenDatum",
    "LineFunctional",
    "MonadPair",
    "PairOnePS",
    "PlaneCurve",
    "PointConfiguration",
    "ProjectivePoint",
    "RationalMatrix",
    "Subspace",
    "__version__",
    "analyze_curve",
]
