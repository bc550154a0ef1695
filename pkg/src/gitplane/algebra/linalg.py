"""Exact linear algebra over Q: matrices, kernels and subspaces.

Rank, determinant and kernel all go through fraction-free integer
elimination (see ``_backend``); rows are cleared of denominators first.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _backend


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction")
    return Fraction(x)


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (d // x.denominator) for x in row])
    return out


class RationalMatrix:
    """Immutable matrix with ``Fraction`` entries."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(_frac(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> RationalMatrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> RationalMatrix:
        if not columns:
            return cls([() for _ in range(nrows)], 0)
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self.ncols,
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self + other.scale(-1)

    def scale(self, c) -> RationalMatrix:
        c = _frac(c)
        return RationalMatrix([[c * x for x in r] for r in self._rows], self.ncols)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                 for r in self._rows],
                other.ncols,
            )
        vec = tuple(_frac(x) for x in other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._rows)

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.columns(), self.nrows) if self.ncols else \
            RationalMatrix([], self.nrows)

    T = property(transpose)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        scale = 1
        for r in self._rows:
            scale *= lcm(*(x.denominator for x in r)) if r else 1
        return Fraction(_backend.det(integer_rows(self._rows)), scale)

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        return _backend.rank(integer_rows(self._rows))

    def kernel(self) -> RationalMatrix:
        """Basis of the right kernel, as the columns of a ``ncols x k`` matrix."""
        return RationalMatrix.from_columns(nullspace(self._rows, self.ncols), self.ncols)

    def inverse(self) -> RationalMatrix:
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)]
               for i, r in enumerate(self._rows)]
        ech, pivots = _backend.echelon(integer_rows(aug))
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise ValueError("matrix is singular")
        sol = _back_substitute(ech, pivots, 2 * n)
        return RationalMatrix([row[n:] for row in sol], n)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)


def _back_substitute(ech: list[list[int]], pivots: list[int], ncols: int) -> list[list[Fraction]]:
    """Reduced row echelon form (over Q) from a fraction-free echelon form."""
    rows = [[Fraction(x) for x in r] for r in ech]
    for k in range(len(rows) - 1, -1, -1):
        c = pivots[k]
        piv = rows[k][c]
        rows[k] = [x / piv for x in rows[k]]
        for i in range(k):
            f = rows[i][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
    return rows


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Kernel basis vectors of the matrix with the given rows."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    ech, pivots = _backend.echelon(integer_rows(rows))
    rref = _back_substitute(ech, pivots, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -rref[k][free]
        basis.append(tuple(v))
    return basis


def rank_of_vectors(vectors: Sequence[Sequence], ambient_dim: int) -> int:
    if not vectors:
        return 0
    return RationalMatrix(vectors, ambient_dim).rank()


class Subspace:
    """A linear subspace of Q^ambient_dim, held by a column basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, basis: RationalMatrix):
        if basis.ncols and basis.rank() != basis.ncols:
            raise ValueError("subspace basis columns are linearly dependent")
        self.ambient_dim = basis.nrows
        self.basis = basis

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        """Span of arbitrary vectors; a maximal independent subset is kept."""
        vectors = [tuple(_frac(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length does not match ambient dimension")
        if not vectors:
            return cls.zero(ambient_dim)
        # pivot columns of the matrix whose columns are the vectors
        cols = RationalMatrix.from_columns(vectors, ambient_dim)
        _, pivots = _backend.echelon(integer_rows(cols.rows))
        return cls(RationalMatrix.from_columns([vectors[p] for p in pivots], ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(RationalMatrix([() for _ in range(ambient_dim)], 0))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return self.basis.columns()

    def contains(self, v: Sequence) -> bool:
        v = tuple(_frac(x) for x in v)
        return rank_of_vectors(self.vectors() + [v], self.ambient_dim) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __add__(self, other: Subspace) -> Subspace:
        _check_ambient(self, other)
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __le__(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return (self + other).dim == other.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and (self + other).dim == self.dim)

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def annihilator(self) -> Subspace:
        """Vectors w with w . v = 0 for all v in the subspace (standard pairing)."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return Subspace(self.basis.T.kernel())


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(
            f"ambient dimension mismatch: {a.ambient_dim} != {b.ambient_dim}")


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    # solve A x = B y
    rows = [list(a.basis.row(i)) + [-x for x in b.basis.row(i)] for i in range(n)]
    sols = nullspace(rows, a.dim + b.dim)
    vecs = [a.basis @ s[:a.dim] for s in sols]
    return Subspace.span(vecs, n)


def random_sl(n: int, rng, bound: int = 3, steps: int | None = None) -> RationalMatrix:
    """Random determinant-1 rational matrix as a product of elementary
    shears and diagonal scalings ``diag(..., t, ..., 1/t, ...)``."""
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.25:
            t = Fraction(rng.choice([-2, -1, 2, 3]), rng.randint(1, 3))
            M[i] = [x * t for x in M[i]]
            M[j] = [x / t for x in M[j]]
        else:
            c = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return RationalMatrix(M)
