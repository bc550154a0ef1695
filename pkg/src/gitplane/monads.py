"""Sheaves in M(r, 0, n) through their Kronecker/monad data.

Conventions
-----------
``H`` has basis ``h_1..h_n`` and ``V`` has basis ``e_1, e_2, e_3``.  A vector
of ``H (x) V`` is stored with coordinate ``3*i + j`` on ``h_i (x) e_j``.  The
subspace ``K`` is the column span of the ``3n x n`` matrix whose entry at
``(3*i + j, c)`` is ``A_j[i, c]``, so ``phi_l = l_1 A_1 + l_2 A_2 + l_3 A_3``.

The quotient ``H (x) V* -> L`` sends ``h_i (x) e_j*`` to column ``i`` of
``B_j``.  With ``Lambda^2 V* = V`` via ``e_i* ^ e_j* -> e_k`` for cyclic
``(i, j, k)``, the composite vanishes iff ``B_j A_k - B_k A_j = 0`` for the
three cyclic pairs.  ``L*`` sits inside ``H* (x) V`` as the row space of the
quotient matrix, with the same coordinate order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra.linalg import RationalMatrix, Subspace, subspace_intersect
from .algebra.polynomial import HomogeneousPolynomial, det_linear_matrix
from .curves import PlaneCurve, ProjectivePoint, rational_points_of_multiplicity

LINE_NAMES = ("l1", "l2", "l3")
CYCLIC = ((1, 2), (2, 0), (0, 1))

UNSTABLE = "unstable (large-m polarization)"
INCONCLUSIVE = "inconclusive"


def _vec3(v) -> tuple[Fraction, Fraction, Fraction]:
    t = tuple(Fraction(x) for x in v)
    if len(t) != 3:
        raise ValueError("expected a vector of length 3")
    if not any(t):
        raise ValueError("expected a nonzero vector")
    return t


@dataclass(frozen=True)
class LineFunctional:
    """``l in V*``; the line is ``P(V')`` with ``V' = ker l``."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coords", _vec3(self.coords))

    def kernel(self) -> Subspace:
        return Subspace(RationalMatrix([self.coords]).kernel())

    @classmethod
    def annihilating(cls, v_prime: Subspace) -> LineFunctional:
        if v_prime.ambient_dim != 3 or v_prime.dim != 2:
            raise ValueError("a line is the annihilator of a 2-dimensional subspace of V")
        return cls(v_prime.annihilator().vectors()[0])


def _as_line(l) -> LineFunctional:
    return l if isinstance(l, LineFunctional) else LineFunctional(tuple(l))


@dataclass(frozen=True)
class MonadPair:
    n: int
    r: int
    A: tuple[RationalMatrix, RationalMatrix, RationalMatrix]
    B: tuple[RationalMatrix, RationalMatrix, RationalMatrix] | None = None

    def __post_init__(self):
        n, r = self.n, self.r
        if n < 1 or not 1 <= r <= n:
            raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
        A = tuple(a if isinstance(a, RationalMatrix) else RationalMatrix(a) for a in self.A)
        if len(A) != 3 or any(a.shape != (n, n) for a in A):
            raise ValueError(f"A must be three {n}x{n} matrices")
        object.__setattr__(self, "A", A)
        if r == n:
            if self.B is not None and any(b.nrows for b in self.B):
                raise ValueError("r = n leaves no room for L; B must be absent")
            object.__setattr__(self, "B", None)
        else:
            if self.B is None:
                raise ValueError(f"B data is required when r < n (dim L = {n - r})")
            B = tuple(b if isinstance(b, RationalMatrix) else RationalMatrix(b, n)
                      for b in self.B)
            if len(B) != 3 or any(b.shape != (n - r, n) for b in B):
                raise ValueError(f"B must be three {n - r}x{n} matrices")
            object.__setattr__(self, "B", B)
            if self.quotient_matrix().rank() != n - r:
                raise ValueError("the quotient H (x) V* -> L is not surjective")
        if self.k_matrix().rank() != n:
            raise ValueError("the columns spanning K are linearly dependent")

    @classmethod
    def from_k_vectors(cls, n: int, vectors: Sequence[Sequence], r: int | None = None,
                       B=None) -> MonadPair:
        """Build from ``n`` vectors of ``H (x) V`` (length 3n) spanning K."""
        if len(vectors) != n:
            raise ValueError(f"K needs exactly {n} spanning vectors")
        cols = [tuple(Fraction(x) for x in v) for v in vectors]
        if any(len(c) != 3 * n for c in cols):
            raise ValueError(f"vectors of H (x) V have length {3 * n}")
        A = tuple(RationalMatrix([[cols[c][3 * i + j] for c in range(n)] for i in range(n)])
                  for j in range(3))
        return cls(n, n if r is None else r, A, B)

    def k_matrix(self) -> RationalMatrix:
        n = self.n
        return RationalMatrix([[self.A[j][i, c] for c in range(n)]
                               for i in range(n) for j in range(3)], n)

    @property
    def K(self) -> Subspace:
        return Subspace(self.k_matrix())

    def quotient_matrix(self) -> RationalMatrix:
        """``(n-r) x 3n`` matrix of ``H (x) V* -> L``."""
        n = self.n
        if self.B is None:
            return RationalMatrix([], 3 * n)
        return RationalMatrix([[self.B[j][row, i] for i in range(n) for j in range(3)]
                               for row in range(n - self.r)], 3 * n)

    def lstar(self) -> Subspace:
        """``L*`` inside ``H* (x) V``."""
        if self.B is None:
            return Subspace.zero(3 * self.n)
        return Subspace.span(self.quotient_matrix().rows, 3 * self.n)

    def dimensions(self) -> tuple[int, int, int]:
        """``(dim K, dim H, dim L)``."""
        return self.n, self.n, self.n - self.r


def tensor_with(v_basis: Sequence[Sequence], n: int) -> Subspace:
    """``H (x) V'`` for ``V'`` spanned by ``v_basis``."""
    vecs = []
    for v in v_basis:
        for i in range(n):
            x = [Fraction(0)] * (3 * n)
            for j in range(3):
                x[3 * i + j] = Fraction(v[j])
            vecs.append(x)
    return Subspace.span(vecs, 3 * n)


# ---------------------------------------------------------------------------
# basic operations


def composite_components(A: Sequence, B: Sequence) -> list[RationalMatrix]:
    """The three components ``B_j A_k - B_k A_j`` of ``b o a`` for raw data."""
    A = [a if isinstance(a, RationalMatrix) else RationalMatrix(a) for a in A]
    B = [b if isinstance(b, RationalMatrix) else RationalMatrix(b, A[0].nrows) for b in B]
    if len(A) != 3 or len(B) != 3:
        raise ValueError("need three A and three B matrices")
    n = A[0].nrows
    if any(a.shape != (n, n) for a in A):
        raise ValueError(f"A must be three {n}x{n} matrices")
    if any(b.ncols != n or b.nrows != B[0].nrows for b in B):
        raise ValueError(f"B must be three matrices with {n} columns and equal row counts")
    return [B[j] @ A[k] - B[k] @ A[j] for j, k in CYCLIC]


def monad_condition_check(M: MonadPair | tuple) -> bool:
    """``b o a = 0``.  Accepts a MonadPair or a raw ``(A, B)`` tuple."""
    if isinstance(M, MonadPair):
        if M.B is None:
            return True
        A, B = M.A, M.B
    else:
        A, B = M
        if B is None:
            return True
    return all(c.is_zero() for c in composite_components(A, B))


def phi_line(M: MonadPair, l) -> RationalMatrix:
    """Restriction map ``K -> H`` for the line with equation ``l``."""
    l = _as_line(l).coords
    out = M.A[0].scale(l[0])
    for j in (1, 2):
        out = out + M.A[j].scale(l[j])
    return out


def h0_splitting_count(M: MonadPair, l) -> int:
    """``dim ker phi_l``; positive exactly on jump lines."""
    return M.n - phi_line(M, l).rank()


def jump_divisor(M: MonadPair) -> HomogeneousPolynomial:
    """``det(l1 A1 + l2 A2 + l3 A3)`` as a form of degree n in ``(l1, l2, l3)``.
    The zero form means every line jumps."""
    n = M.n
    entries = [[HomogeneousPolynomial.linear([M.A[j][i, c] for j in range(3)])
                for c in range(n)] for i in range(n)]
    return det_linear_matrix(entries)


def k_prime(M: MonadPair, v_prime: Subspace) -> Subspace:
    """``K' = K cap H (x) V'``."""
    if v_prime.ambient_dim != 3:
        raise ValueError("V' must be a subspace of V = Q^3")
    return subspace_intersect(M.K, tensor_with(v_prime.vectors(), M.n))


@dataclass(frozen=True)
class SLVVerdict:
    unstable: bool
    n: int
    dim_v_prime: int
    dim_k_prime: int
    v_prime: Subspace
    lemma_violation: bool = False

    @property
    def verdict(self) -> str:
        return UNSTABLE if self.unstable else INCONCLUSIVE


def _check_v_prime(v_prime: Subspace):
    if v_prime.ambient_dim != 3:
        raise ValueError("V' must be a subspace of V = Q^3")
    if v_prime.dim not in (1, 2):
        raise ValueError(f"dim V' must be 1 or 2, got {v_prime.dim}")


def sl_v_instability(M: MonadPair, v_prime: Subspace) -> SLVVerdict:
    """Unstable when ``3 dim K' > dim V' * n``.

    For ``dim V' = 1`` a semistable sheaf always has ``K' = 0``; a nonzero K'
    is reported as a lemma violation.
    """
    _check_v_prime(v_prime)
    kp = k_prime(M, v_prime).dim
    dv = v_prime.dim
    return SLVVerdict(dv == 2 and 3 * kp > dv * M.n, M.n, dv, kp, v_prime,
                      lemma_violation=(dv == 1 and kp > 0))


def alpha_injectivity(M: MonadPair, v) -> bool:
    """Rank test for ``alpha_v : K -> Hom(v-perp, H)``, evaluating ``phi`` on a
    basis of the annihilator of ``v``."""
    v = _vec3(v)
    w1, w2 = Subspace.span([v], 3).annihilator().vectors()
    p1, p2 = phi_line(M, w1), phi_line(M, w2)
    stacked = RationalMatrix(list(p1.rows) + list(p2.rows), M.n)
    return stacked.rank() == M.n


def lstar_intersection(M: MonadPair, v) -> int:
    """``dim (L* cap H* (x) <v>)``; zero for data from a semistable sheaf."""
    if M.r == M.n:
        raise ValueError("r = n: L is zero, there is nothing to intersect")
    v = _vec3(v)
    return subspace_intersect(M.lstar(), tensor_with([v], M.n)).dim


def l_prime_dim(M: MonadPair, v_prime: Subspace) -> int:
    """``dim L' = dim L - dim image(H (x) ann(V') -> L)``."""
    if M.B is None:
        return 0
    ann = v_prime.annihilator().vectors()
    if not ann:
        return M.n - M.r
    images = [M.quotient_matrix() @ x for x in tensor_with(ann, M.n).vectors()]
    return (M.n - M.r) - Subspace.span(images, M.n - M.r).dim if images else M.n - M.r


# ---------------------------------------------------------------------------
# Hilbert-Mumford weights for pairs


@dataclass(frozen=True)
class PairOnePS:
    """``lambda = lambda_H . lambda_V``.  ``h_frame``/``v_frame`` columns are
    the eigenvectors carrying ``h_weights``/``v_weights`` (standard bases when
    omitted)."""

    h_weights: tuple[int, ...]
    v_weights: tuple[int, int, int]
    h_frame: RationalMatrix | None = None
    v_frame: RationalMatrix | None = None

    def __post_init__(self):
        hw = tuple(int(x) for x in self.h_weights)
        vw = tuple(int(x) for x in self.v_weights)
        if len(vw) != 3:
            raise ValueError("V carries three weights")
        if sum(hw) != 0 or sum(vw) != 0:
            raise ValueError("weights of a one-parameter subgroup of SL must sum to zero")
        if not any(hw) and not any(vw):
            raise ValueError("the trivial subgroup has no weights to test")
        object.__setattr__(self, "h_weights", hw)
        object.__setattr__(self, "v_weights", vw)
        if self.h_frame is not None and (self.h_frame.shape != (len(hw), len(hw))
                                         or self.h_frame.det() == 0):
            raise ValueError("h_frame must be invertible and match the H weights")
        if self.v_frame is not None and (self.v_frame.shape != (3, 3) or self.v_frame.det() == 0):
            raise ValueError("v_frame must be an invertible 3x3 matrix")


def _weighted_mu_part(vectors: Sequence[Sequence[Fraction]], weights: Sequence[int]) -> int:
    """``sum_t u_t (dim S_t - dim S_{t-1})`` for the flag of top-weight spans."""
    total = len(vectors)
    if total == 0:
        return 0
    out = 0
    prev = 0
    for u in sorted(set(weights), reverse=True):
        low = [k for k, w in enumerate(weights) if w < u]
        if low:
            proj = RationalMatrix([[v[k] for k in low] for v in vectors], len(low))
            dim_t = total - proj.rank()
        else:
            dim_t = total
        out += u * (dim_t - prev)
        prev = dim_t
    return out


def _to_frame(vectors, left: RationalMatrix, right: RationalMatrix, n: int):
    """Coordinates ``left @ X @ right`` for each vector viewed as ``X`` (n x 3)."""
    out = []
    for v in vectors:
        X = RationalMatrix([[v[3 * i + j] for j in range(3)] for i in range(n)])
        Y = left @ X @ right
        out.append([Y[i, j] for i in range(n) for j in range(3)])
    return out


def mu_pair(M: MonadPair, lam: PairOnePS, p: int, q: int) -> int:
    """``mu((K, W), lambda)`` under polarization ``(p, q)`` with ``W = L*``.

    ``-mu = p sum u_i (dim K_i - dim K_(i-1)) + q sum u_i (dim W_i - dim W_(i-1))``
    where ``h_k (x) e_j`` has weight ``p_k + q_j`` and ``h_k* (x) e_j`` has
    weight ``-p_k + q_j``.
    """
    n = M.n
    if len(lam.h_weights) != n:
        raise ValueError(f"H carries {n} weights, got {len(lam.h_weights)}")
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise ValueError("polarization must be non-negative and nonzero")
    FH = lam.h_frame if lam.h_frame is not None else RationalMatrix.identity(n)
    FV = lam.v_frame if lam.v_frame is not None else RationalMatrix.identity(3)
    FV_inv_T = FV.inverse().T
    k_vecs = _to_frame(M.K.vectors(), FH.inverse(), FV_inv_T, n)
    w_vecs = _to_frame(M.lstar().vectors(), FH.T, FV_inv_T, n)
    k_weights = [lam.h_weights[i] + lam.v_weights[j] for i in range(n) for j in range(3)]
    w_weights = [-lam.h_weights[i] + lam.v_weights[j] for i in range(n) for j in range(3)]
    minus_mu = p * _weighted_mu_part(k_vecs, k_weights) + q * _weighted_mu_part(w_vecs, w_weights)
    return -minus_mu


# ---------------------------------------------------------------------------
# large-m verdict


@dataclass(frozen=True)
class LargeMVerdict:
    unstable: bool
    n: int
    r: int
    dim_v_prime: int
    dim_k_prime: int
    dim_l: int
    dim_l_prime: int
    threshold: Fraction
    m_min: int | None
    chain: tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> str:
        return UNSTABLE if self.unstable else INCONCLUSIVE


def large_m_verdict(M: MonadPair, v_prime: Subspace) -> LargeMVerdict:
    """Verdict under the polarization ``(r m - n, n)`` for ``m`` large.

    The polarized inequality reads ``p (3 K' - dV' n) > n (dV' L - 3 L')``
    with ``p = r m - n``; for large m only the sign of ``3 K' - dV' n``
    matters.  ``m_min`` is the first m from which the polarized inequality
    holds (when it eventually holds).
    """
    if v_prime.dim != 2:
        raise ValueError("the large-m reduction needs dim V' = 2")
    base = sl_v_instability(M, v_prime)
    n, r, dv, kp = M.n, M.r, v_prime.dim, base.dim_k_prime
    dl = n - r
    dlp = l_prime_dim(M, v_prime)
    a = 3 * kp - dv * n
    b = n * (dv * dl - 3 * dlp)
    threshold = Fraction(dv * n, 3)
    chain = [
        f"polarization (p, q) = (r m - n, n) = ({r} m - {n}, {n})",
        f"(p dimK' + q dimL')/dimV' > (p dimK + q dimL)/dimV  <=>  "
        f"p * {a} > {b}",
        f"m -> infinity: dimK' > dimV' dimK / dimV = {threshold}",
        f"dimK' = {kp} {'>' if base.unstable else '<='} {threshold}",
    ]
    m_min = None
    if a > 0:
        # smallest m with r m - n > b / a and r m - n > 0
        bound = Fraction(b, a) if b > 0 else Fraction(0)
        m = (bound + n) // r + 1
        m_min = int(m)
        chain.append(f"polarized inequality holds for all m >= {m_min}")
    elif a == 0:
        chain.append("boundary dimK' = 2n/3: polarized inequality is decided by the L-term "
                     f"({'holds' if b < 0 else 'fails'}); integer rounding reports inconclusive")
    return LargeMVerdict(base.unstable, n, r, dv, kp, dl, dlp, threshold, m_min, tuple(chain))


# ---------------------------------------------------------------------------
# candidate search


@dataclass
class LineSearch:
    best_line: LineFunctional | None
    best_h0: int
    unstable: bool
    checked: list[tuple[LineFunctional, int]]
    complete_for_rational_lines: bool


def search_destabilizing_lines(M: MonadPair, seed: int = 0,
                               extra: Sequence = (), samples: int = 8) -> LineSearch:
    """Look for a line with ``h0 > 2n/3``.

    Such a line is a point of multiplicity ``>= h0`` on the jump divisor, so
    when the divisor is not identically zero the rational points of
    multiplicity ``> 2n/3`` are exhaustive candidates.  Otherwise (and along
    multiple line components) seeded random lines are sampled.
    """
    n = M.n
    need = 2 * n // 3 + 1
    rng = random.Random(seed)
    candidates: list[tuple] = [tuple(_as_line(l).coords) for l in extra]
    complete = True
    D = jump_divisor(M)
    if D.is_zero():
        complete = False
        candidates += [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        candidates += [_random_line(rng) for _ in range(samples)]
    else:
        locus = rational_points_of_multiplicity(PlaneCurve(D), need)
        candidates += [tuple(p) for p in locus.points]
        if locus.non_isolated:
            complete = False
            for line in locus.lines:
                candidates += _sample_on_line(line, rng, samples)
    checked = []
    seen = set()
    for c in candidates:
        key = ProjectivePoint(c)
        if key in seen:
            continue
        seen.add(key)
        lf = LineFunctional(c)
        checked.append((lf, h0_splitting_count(M, lf)))
    best = max(checked, key=lambda t: t[1], default=(None, 0))
    return LineSearch(best[0], best[1], 3 * best[1] > 2 * n, checked, complete)


def _random_line(rng: random.Random) -> tuple[int, int, int]:
    while True:
        v = tuple(rng.randint(-9, 9) for _ in range(3))
        if any(v):
            return v


def _sample_on_line(line: HomogeneousPolynomial, rng: random.Random, count: int):
    row = [line.coefficient(u) for u in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    p, q = RationalMatrix([row]).kernel().columns()
    out = []
    for _ in range(count):
        s, t = rng.randint(-9, 9), rng.randint(-9, 9)
        if s or t:
            out.append(tuple(s * a + t * b for a, b in zip(p, q)))
    return out


# ---------------------------------------------------------------------------
# generators


def _random_vector(rng: random.Random, length: int, lo: int = -5, hi: int = 5):
    return [Fraction(rng.randint(lo, hi)) for _ in range(length)]


def random_monad(n: int, rng: random.Random) -> MonadPair:
    """Random pair with r = n (no L, condition vacuous)."""
    while True:
        vecs = [_random_vector(rng, 3 * n) for _ in range(n)]
        try:
            return MonadPair.from_k_vectors(n, vecs)
        except ValueError:
            continue


def planted_monad(n: int, k: int, v_prime: Subspace, rng: random.Random,
                  r: int | None = None, B=None) -> MonadPair:
    """K spanned by ``k`` random vectors of ``H (x) V'`` and ``n - k`` random
    vectors of ``H (x) V``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k > n * v_prime.dim:
        raise ValueError("H (x) V' is too small for the planted vectors")
    basis = tensor_with(v_prime.vectors(), n).vectors()
    while True:
        vecs = []
        for _ in range(k):
            coeffs = _random_vector(rng, len(basis))
            vecs.append([sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0))
                         for i in range(3 * n)])
        vecs += [_random_vector(rng, 3 * n) for _ in range(n - k)]
        try:
            return MonadPair.from_k_vectors(n, vecs, r=r, B=B)
        except ValueError:
            continue


def random_quotient(n: int, r: int, rng: random.Random):
    """Random B data of full rank; the monad condition is not imposed."""
    while True:
        B = tuple(RationalMatrix([_random_vector(rng, n) for _ in range(n - r)], n)
                  for _ in range(3))
        q = RationalMatrix([[B[j][row, i] for i in range(n) for j in range(3)]
                            for row in range(n - r)], 3 * n)
        if q.rank() == n - r:
            return B


def condition_map(B: Sequence[RationalMatrix], n: int) -> RationalMatrix:
    """``H (x) V -> L (x) V``, ``x -> (B_j x_k - B_k x_j)`` over the cyclic
    pairs; ``b o a = 0`` says exactly that K lies in its kernel."""
    m = B[0].nrows
    rows = []
    for j, k in CYCLIC:
        for row in range(m):
            out = [Fraction(0)] * (3 * n)
            for i in range(n):
                out[3 * i + k] += B[j][row, i]
                out[3 * i + j] -= B[k][row, i]
            rows.append(out)
    return RationalMatrix(rows, 3 * n)


def monad_from_quotient(n: int, r: int, rng: random.Random, B=None) -> MonadPair:
    """A pair satisfying ``b o a = 0``: B is random (or given) and K is spanned
    by n random vectors of the kernel of ``condition_map``.  This is linear in
    K once B is fixed; it needs ``n <= 3r`` generically."""
    if not 1 <= r < n:
        raise ValueError("need 1 <= r < n")
    if B is None:
        B = random_quotient(n, r, rng)
    ker = condition_map(B, n).kernel().columns()
    if len(ker) < n:
        raise ValueError(f"the condition leaves only {len(ker)} dimensions for K, need {n}")
    for _ in range(100):
        vecs = []
        for _ in range(n):
            coeffs = _random_vector(rng, len(ker))
            vecs.append([sum((c * v[t] for c, v in zip(coeffs, ker)), Fraction(0))
                         for t in range(3 * n)])
        try:
            return MonadPair.from_k_vectors(n, vecs, r=r, B=B)
        except ValueError:
            continue
    raise ValueError("could not draw independent vectors spanning K")
