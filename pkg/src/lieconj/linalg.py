"""Exact dense linear algebra over Q and F_p.

Everything here is immutable: :class:`Matrix` stores its entries as a tuple of
row tuples, and every operation returns a fresh matrix.  Subspace bases are
always emitted in reduced row echelon form so they can be compared directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from sympy import Poly, symbols

from .errors import (
    FieldMismatch,
    Inconsistent,
    NotCommuting,
    NotDiagonalizableOverField,
    ShapeMismatch,
)
from .fields import QQ, FieldSpec, Scalar


@dataclass(frozen=True, eq=False)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    data: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], field: FieldSpec = QQ, cols: int | None = None) -> Matrix:
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ShapeMismatch("ragged rows")
        return cls(field, len(data), cols, data)

    @classmethod
    def _raw(cls, field: FieldSpec, data: Sequence[Sequence[Scalar]], cols: int) -> Matrix:
        # entries already live in `field`
        return cls(field, len(data), cols, tuple(tuple(r) for r in data))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> Matrix:
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> Matrix:
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence, field: FieldSpec = QQ) -> Matrix:
        n = len(values)
        z = field.zero
        return cls(field, n, n, tuple(tuple(field(values[i]) if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, perm: Sequence[int], field: FieldSpec = QQ) -> Matrix:
        """The matrix P with ``(P v)_i = v_{perm[i]}``."""
        n = len(perm)
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if j == perm[i] else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.data[i]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.data)

    def flatten(self) -> tuple[Scalar, ...]:
        return tuple(x for r in self.data for x in r)

    @property
    def T(self) -> Matrix:
        if not self.rows:
            return Matrix(self.field, self.cols, 0, ((),) * self.cols)
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)))

    def _check(self, other: Matrix):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        z = self.field.zero
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix(self.field, self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Matrix-vector product ``M v``."""
        if len(v) != self.cols:
            raise ShapeMismatch("vector length")
        z = self.field.zero
        out = []
        for r in self.data:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def is_diagonal(self) -> bool:
        return all(not x for i, r in enumerate(self.data) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> tuple[Scalar, ...]:
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def trace(self) -> Scalar:
        s = self.field.zero
        for x in self.diagonal():
            s = s + x
        return s

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> Matrix:
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        cols = list(cols)
        return Matrix(self.field, len(rows), len(cols), tuple(tuple(self.data[i][j] for j in cols) for i in rows))

    def vstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.cols:
            raise ShapeMismatch("vstack")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    def hstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.rows != other.rows:
            raise ShapeMismatch("hstack")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      tuple(r + s for r, s in zip(self.data, other.data)))

    def inverse(self) -> Matrix:
        if not self.is_square:
            raise ShapeMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = self.hstack(Matrix.identity(n, self.field))
        res = rref(aug)
        if res.pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return res.R.submatrix(cols=range(n, 2 * n))

    def is_invertible(self) -> bool:
        return self.is_square and rank(self) == self.rows

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix<{self.field} {self.rows}x{self.cols}>[{body}]"


class RREF(NamedTuple):
    R: Matrix
    pivots: list[int]
    rank: int


def _rref_rows(rows: list[list[Scalar]], ncols: int, pivot_limit: int | None = None):
    """In-place Gauss-Jordan elimination; returns the pivot columns."""
    limit = ncols if pivot_limit is None else pivot_limit
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if prow[c] != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nzc:
                        ri[j] = ri[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> RREF:
    """Reduced row echelon form, pivot columns, and rank."""
    rows = [list(r) for r in M.data]
    pivots = _rref_rows(rows, M.cols)
    return RREF(Matrix._raw(M.field, rows, M.cols), pivots, len(pivots))


def rref_with_transform(M: Matrix) -> tuple[RREF, Matrix]:
    """Return ``(rref(M), Q)`` with ``Q`` invertible and ``Q @ M == R``."""
    aug = M.hstack(Matrix.identity(M.rows, M.field))
    rows = [list(r) for r in aug.data]
    pivots = _rref_rows(rows, aug.cols, pivot_limit=M.cols)
    R = Matrix._raw(M.field, [r[: M.cols] for r in rows], M.cols)
    Q = Matrix._raw(M.field, [r[M.cols:] for r in rows], M.rows)
    return RREF(R, pivots, len(pivots)), Q


def rank(M: Matrix) -> int:
    return rref(M).rank


def row_basis(M: Matrix) -> Matrix:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    res = rref(M)
    return res.R.submatrix(rows=range(res.rank))


def solve(A: Matrix, b: Sequence) -> tuple[Scalar, ...]:
    """One solution of ``A x = b``; free variables are set to zero."""
    if len(b) != A.rows:
        raise ShapeMismatch(f"A has {A.rows} rows but b has {len(b)} entries")
    F = A.field
    rows = [list(r) + [F(x)] for r, x in zip(A.data, b)]
    pivots = _rref_rows(rows, A.cols + 1, pivot_limit=A.cols)
    for r in rows[len(pivots):]:
        if r[-1]:
            raise Inconsistent("right-hand side is not in the column space")
    x = [F.zero] * A.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return tuple(x)


def kernel(M: Matrix) -> Matrix:
    """Basis of ``{v : M v = 0}`` as the rows of a matrix in RREF."""
    res = rref(M)
    F = M.field
    pivset = set(res.pivots)
    free = [j for j in range(M.cols) if j not in pivset]
    basis = []
    for f in free:
        v = [F.zero] * M.cols
        v[f] = F.one
        for i, c in enumerate(res.pivots):
            v[c] = -res.R.data[i][f]
        basis.append(v)
    if not basis:
        return Matrix(F, 0, M.cols, ())
    return row_basis(Matrix._raw(F, basis, M.cols))


def in_row_space(basis: Matrix, pivots: Sequence[int], v: Sequence[Scalar]) -> tuple[Scalar, ...] | None:
    """Coordinates of ``v`` in an RREF basis (rows), or None if ``v`` is outside the span."""
    coords = tuple(v[c] for c in pivots)
    z = basis.field.zero
    for j in range(basis.cols):
        s = z
        for i, c in enumerate(coords):
            if c:
                s = s + c * basis.data[i][j]
        if s != v[j]:
            return None
    return coords


def same_row_space(A: Matrix, B: Matrix) -> bool:
    return A.cols == B.cols and row_basis(A) == row_basis(B)


# -- characteristic polynomial and eigenvalues ---------------------------------

def berkowitz(rows: Sequence[Sequence], one=1, zero=0) -> list:
    """Characteristic polynomial ``det(xI - M)`` by Berkowitz's division-free method.

    Works over any commutative ring; coefficients are returned highest degree
    first, so the result starts with ``one``.
    """
    n = len(rows)
    if n == 0:
        return [one]
    # vector of coefficients for the leading 1x1 block
    poly = [one, -rows[0][0]]
    for k in range(1, n):
        # M_k = [[A, R], [C, a]] with A the leading k x k block
        A = [list(rows[i][:k]) for i in range(k)]
        R = [rows[i][k] for i in range(k)]
        C = list(rows[k][:k])
        a = rows[k][k]
        # Toeplitz column: 1, -a, -C R, -C A R, -C A^2 R, ...
        col = [one, -a]
        v = R
        for _ in range(k):
            s = zero
            for ci, vi in zip(C, v):
                s = s + ci * vi
            col.append(-s)
            v = [sum((A[i][j] * v[j] for j in range(k)), zero) for i in range(k)]
        # new poly = T * poly, T lower-triangular Toeplitz built from col (length k+2)
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i, k) + 1):
                s = s + col[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly


def charpoly(M: Matrix) -> list[Scalar]:
    """Monic characteristic polynomial coefficients, highest degree first.

    Over Q the matrix is first cleared to an integer matrix ``D*M`` so that the
    division-free recurrence runs on machine-independent Python ints.
    """
    if not M.is_square:
        raise ShapeMismatch("charpoly of a non-square matrix")
    F = M.field
    if F.is_rational:
        D = lcm(1, *(x.denominator for r in M.data for x in r))
        ints = [[int(x * D) for x in r] for r in M.data]
        c = berkowitz(ints)
        # chi_M(x) = D^-n chi_{DM}(D x)
        return [Fraction(ck, D ** k) for k, ck in enumerate(c)]
    return berkowitz(M.data, one=F.one, zero=F.zero)


def _poly_eval(coeffs, x):
    acc = 0 * x
    for c in coeffs:
        acc = acc * x + c
    return acc


def _integer_roots_monic(coeffs: list[int]) -> list[int]:
    """Distinct integer roots of a monic integer polynomial (highest degree first)."""
    # linear factors of the factorization over Z; monic, so every rational root is an integer
    _, factors = Poly([int(c) for c in coeffs], _X, domain="ZZ").factor_list()
    roots = {-int(f.all_coeffs()[1]) for f, _ in factors if f.degree() == 1}
    return sorted(roots)


_X = symbols("x")


def eigenvalues(M: Matrix) -> list[Scalar]:
    """Distinct eigenvalues lying in the base field, in ascending canonical order."""
    F = M.field
    if not M.is_square:
        raise ShapeMismatch("eigenvalues of a non-square matrix")
    if M.rows == 0:
        return []
    if F.is_rational:
        D = lcm(1, *(x.denominator for r in M.data for x in r))
        ints = [[int(x * D) for x in r] for r in M.data]
        cp = berkowitz(ints)
        return [Fraction(r, D) for r in _integer_roots_monic(cp)]
    cp = charpoly(M)
    return [x for x in F.elements() if not _poly_eval(cp, x)]


class EigenDecomposition(NamedTuple):
    eigenvalues: list[Scalar]
    eigenspaces: list[Matrix]

    @property
    def diagonalizable(self) -> bool:
        n = self.eigenspaces[0].cols if self.eigenspaces else 0
        return sum(E.rows for E in self.eigenspaces) == n


def eigen(M: Matrix) -> EigenDecomposition:
    """Field eigenvalues and their (right) eigenspaces, bases as RREF rows."""
    vals = eigenvalues(M)
    spaces = []
    I = Matrix.identity(M.rows, M.field)
    for lam in vals:
        spaces.append(kernel(M - I.scale(lam)))
    return EigenDecomposition(vals, spaces)


def simultaneous_diagonalize(family: Sequence[Matrix]) -> Matrix:
    """Invertible ``g`` with ``g A g^-1`` diagonal for every ``A`` in a commuting family.

    The rows of ``g`` are common left eigenvectors: the space is kept as a list
    of common eigenspaces that each family member splits further.
    """
    if not family:
        raise ValueError("empty family")
    n = family[0].rows
    F = family[0].field
    for A in family:
        if A.field != F:
            raise FieldMismatch("family spans several fields")
        if A.shape != (n, n):
            raise ShapeMismatch("family matrices must be square of one size")
    for i, A in enumerate(family):
        for B in family[i + 1:]:
            if A @ B != B @ A:
                raise NotCommuting("family members do not commute")
    if n == 0:
        return Matrix.identity(0, F)
    blocks = [Matrix.identity(n, F)]
    for A in family:
        refined = []
        for V in blocks:
            k = V.rows
            # restriction of x -> x A to span(rows of V): V A = R V
            VT = V.T
            R = Matrix._raw(F, [solve(VT, row) for row in (V @ A).data], k)
            # left eigenvectors of A inside V <-> left eigenvectors of R
            dec = eigen(R.T)
            if sum(E.rows for E in dec.eigenspaces) != k:
                raise NotDiagonalizableOverField(
                    f"a family member does not split over {F} on a {k}-dimensional common eigenspace"
                )
            for E in dec.eigenspaces:
                refined.append(row_basis(E @ V))
        blocks = refined
    # rows may be listed in any order; leading-pivot order makes diagonal input give g = I
    rows = [r for B in blocks for r in B.data]
    rows.sort(key=_leading_index)
    return Matrix._raw(F, rows, n)


def _leading_index(v: Sequence[Scalar]) -> int:
    return next((j for j, x in enumerate(v) if x), len(v))
