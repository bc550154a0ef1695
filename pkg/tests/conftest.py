import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gitplane.algebra import HomogeneousPolynomial
from gitplane.curves import ProjectivePoint
from gitplane.hulsbergen import PointConfiguration

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def monomials(n):
    return [(a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)]


def random_form(rng: random.Random, n: int, lo=-4, hi=4, density=1.0, keep=None):
    """Random form of degree n; ``keep`` filters exponent triples."""
    terms = {}
    for e in monomials(n):
        if keep is not None and not keep(e):
            continue
        if rng.random() <= density:
            c = rng.randint(lo, hi)
            if c:
                terms[e] = Fraction(c, rng.choice([1, 1, 2, 3]))
    return HomogeneousPolynomial(n, terms)


def random_matrix(rng: random.Random, n: int, m: int | None = None, lo=-5, hi=5):
    m = n if m is None else m
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(m)] for _ in range(n)]


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i, p in enumerate(perm):
            prod *= rows[i][p]
        total += -prod if inv % 2 else prod
    return total


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_configuration(rng: random.Random, n: int, bound: int = 6):
    """n + 1 distinct points with small integer coordinates."""
    seen, pts = set(), []
    while len(pts) < n + 1:
        p = tuple(rng.randint(-bound, bound) for _ in range(3))
        if not any(p) or ProjectivePoint(p) in seen:
            continue
        seen.add(ProjectivePoint(p))
        pts.append(p)
    return PointConfiguration(tuple(pts))


def random_coefficients(rng: random.Random, k: int):
    while True:
        cs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(k)]
        if any(cs):
            return tuple(cs)
