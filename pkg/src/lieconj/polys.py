"""Dense multivariate polynomials and the Lie algebra of a polynomial's symmetries.

The symmetry algebra of ``f`` is the set of ``m x m`` matrices ``A`` with

    sum_i (A x)_i * df/dx_i == 0,

the derivative at ``t = 0`` of ``f(exp(tA) x) = f(x)``.  It is the kernel of a
linear map from the ``m^2`` entries of ``A`` to polynomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Mapping

from .errors import FieldMismatch, NotClosed, ShapeMismatch
from .fields import QQ, FieldSpec, Scalar
from .lie import MatrixLieAlgebra
from .linalg import Matrix, kernel

Exponent = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class DensePolynomial:
    """``terms`` maps exponent vectors to nonzero coefficients."""

    m: int
    terms: Mapping[Exponent, Scalar]
    field: FieldSpec = QQ

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(k) for k in e)
            if len(e) != self.m or any(k < 0 for k in e):
                raise ShapeMismatch(f"exponent {e} does not fit {self.m} variables")
            c = self.field(c)
            if c:
                clean[e] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, m: int, field: FieldSpec = QQ) -> DensePolynomial:
        return cls(m, {}, field)

    @classmethod
    def constant(cls, m: int, c, field: FieldSpec = QQ) -> DensePolynomial:
        return cls(m, {(0,) * m: c}, field)

    @classmethod
    def variable(cls, m: int, i: int, field: FieldSpec = QQ) -> DensePolynomial:
        return cls(m, {tuple(1 if k == i else 0 for k in range(m)): 1}, field)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def _check(self, other: DensePolynomial):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.m != other.m:
            raise ShapeMismatch("polynomials in different numbers of variables")

    def __add__(self, other: DensePolynomial) -> DensePolynomial:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return DensePolynomial(self.m, out, self.field)

    def __neg__(self) -> DensePolynomial:
        return DensePolynomial(self.m, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other: DensePolynomial) -> DensePolynomial:
        return self + (-other)

    def scale(self, c) -> DensePolynomial:
        c = self.field(c)
        return DensePolynomial(self.m, {e: c * v for e, v in self.terms.items()}, self.field)

    def __mul__(self, other: DensePolynomial) -> DensePolynomial:
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return DensePolynomial(self.m, out, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensePolynomial):
            return NotImplemented
        return self.m == other.m and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.field, tuple(self.terms.items())))

    def derivative(self, i: int) -> DensePolynomial:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return DensePolynomial(self.m, out, self.field)

    def times_variable(self, j: int) -> DensePolynomial:
        return DensePolynomial(
            self.m, {e[:j] + (e[j] + 1,) + e[j + 1:]: c for e, c in self.terms.items()}, self.field
        )

    def evaluate(self, point) -> Scalar:
        total = self.field.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * self.field(x) ** k
            total = total + t
        return total

    def compose_linear(self, g: Matrix) -> DensePolynomial:
        """The polynomial ``x -> f(g x)``."""
        if g.shape != (self.m, self.m):
            raise ShapeMismatch("substitution matrix must be m x m")
        if g.field != self.field:
            raise FieldMismatch(f"{g.field} vs {self.field}")
        images = [
            DensePolynomial(self.m, {tuple(1 if k == j else 0 for k in range(self.m)): g[i, j]
                                     for j in range(self.m)}, self.field)
            for i in range(self.m)
        ]
        out = DensePolynomial.zero(self.m, self.field)
        for e, c in self.terms.items():
            t = DensePolynomial.constant(self.m, c, self.field)
            for i, k in enumerate(e):
                for _ in range(k):
                    t = t * images[i]
            out = out + t
        return out

    def __repr__(self):
        return f"DensePolynomial(m={self.m}, {len(self.terms)} terms over {self.field})"


def _perm_sign(p) -> int:
    s = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def _matrix_poly(n: int, signed: bool, field: FieldSpec) -> DensePolynomial:
    m = n * n
    terms = {}
    for p in permutations(range(n)):
        e = [0] * m
        for i in range(n):
            e[i * n + p[i]] = 1
        terms[tuple(e)] = _perm_sign(p) if signed else 1
    return DensePolynomial(m, terms, field)


def det_poly(n: int, field: FieldSpec = QQ) -> DensePolynomial:
    """Determinant of the n x n matrix of variables ``x[i*n + j]``."""
    if n < 1:
        raise ValueError("n must be positive")
    return _matrix_poly(n, True, field)


def perm_poly(n: int, field: FieldSpec = QQ) -> DensePolynomial:
    """Permanent of the n x n matrix of variables ``x[i*n + j]``."""
    if n < 1:
        raise ValueError("n must be positive")
    return _matrix_poly(n, False, field)


def apply_derivation(A: Matrix, f: DensePolynomial) -> DensePolynomial:
    """``sum_{i,j} A[i][j] * x_j * df/dx_i``."""
    if A.shape != (f.m, f.m):
        raise ShapeMismatch(f"matrix {A.shape} does not act on {f.m} variables")
    if A.field != f.field:
        raise FieldMismatch(f"{A.field} vs {f.field}")
    out = DensePolynomial.zero(f.m, f.field)
    for i in range(f.m):
        d = f.derivative(i)
        if d.is_zero():
            continue
        for j in range(f.m):
            if A[i, j]:
                out = out + d.times_variable(j).scale(A[i, j])
    return out


def symmetry_lie_algebra(f: DensePolynomial) -> MatrixLieAlgebra:
    """All ``A`` with ``apply_derivation(A, f) == 0``, from one exact kernel computation."""
    m, F = f.m, f.field
    columns = []
    monomials: dict[Exponent, int] = {}
    for i in range(m):
        d = f.derivative(i)
        for j in range(m):
            col = d.times_variable(j).terms
            for e in col:
                monomials.setdefault(e, len(monomials))
            columns.append(col)
    rows = [[F.zero] * (m * m) for _ in monomials]
    for u, col in enumerate(columns):
        for e, c in col.items():
            rows[monomials[e]][u] = c
    K = kernel(Matrix._raw(F, rows, m * m)) if rows else Matrix.identity(m * m, F)
    mats = [Matrix._raw(F, [K.data[k][i * m:(i + 1) * m] for i in range(m)], m) for k in range(K.rows)]
    L = MatrixLieAlgebra.span(mats, m, F)
    if not L.closed:
        raise NotClosed("derivation kernel failed to close under bracket")
    return L
