"""Matrix Lie algebras as spanned subspaces of M_n.

An algebra keeps its basis in canonical form: the nonzero rows of the RREF of
the basis flattened to n^2-vectors.  Two algebras are equal as subspaces iff
their canonical bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from .errors import Inconsistent, NotClosed, ShapeMismatch
from .fields import QQ, FieldSpec, Scalar
from .linalg import Matrix, in_row_space, rref, solve


def bracket(A: Matrix, B: Matrix) -> Matrix:
    """The commutator ``AB - BA``."""
    if A.field != B.field or not A.is_square or A.shape != B.shape:
        raise ShapeMismatch(f"cannot bracket {A.shape} over {A.field} with {B.shape} over {B.field}")
    return A @ B - B @ A


def _unflatten(v: Sequence[Scalar], n: int, F: FieldSpec) -> Matrix:
    return Matrix._raw(F, [v[i * n:(i + 1) * n] for i in range(n)], n)


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    """Span of ``basis`` inside the n x n matrices over ``field``.

    Build instances through :meth:`span`, which canonicalizes the basis.
    """

    n: int
    field: FieldSpec
    basis: tuple[Matrix, ...]
    pivots: tuple[int, ...] = dc_field(default=(), repr=False)

    @classmethod
    def span(cls, mats: Sequence[Matrix], n: int | None = None, field: FieldSpec | None = None) -> MatrixLieAlgebra:
        if mats:
            n = mats[0].rows if n is None else n
            field = mats[0].field if field is None else field
        if n is None:
            raise ValueError("n is required for an empty spanning set")
        field = QQ if field is None else field
        for M in mats:
            if M.shape != (n, n):
                raise ShapeMismatch(f"expected {n}x{n} matrices, got {M.shape}")
            if M.field != field:
                raise ShapeMismatch("spanning matrices over different fields")
        if not mats:
            return cls(n, field, (), ())
        stacked = Matrix._raw(field, [M.flatten() for M in mats], n * n)
        res = rref(stacked)
        basis = tuple(_unflatten(res.R.data[i], n, field) for i in range(res.rank))
        return cls(n, field, basis, tuple(res.pivots))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _basis_matrix(self) -> Matrix:
        return Matrix._raw(self.field, [b.flatten() for b in self.basis], self.n * self.n)

    def coordinates(self, M: Matrix) -> tuple[Scalar, ...] | None:
        """Coordinates of ``M`` in the stored basis, or None if ``M`` is not in the span."""
        if M.shape != (self.n, self.n):
            raise ShapeMismatch("matrix size does not match the algebra")
        return in_row_space(self._basis_matrix, self.pivots, M.flatten())

    def __contains__(self, M: Matrix) -> bool:
        return self.coordinates(M) is not None

    def contains_algebra(self, other: MatrixLieAlgebra) -> bool:
        return all(b in self for b in other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixLieAlgebra):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.field, self.basis))

    def conjugate(self, g: Matrix, g_inv: Matrix | None = None) -> MatrixLieAlgebra:
        """The algebra ``g L g^-1``."""
        g_inv = g.inverse() if g_inv is None else g_inv
        return MatrixLieAlgebra.span([g @ b @ g_inv for b in self.basis], self.n, self.field)

    @cached_property
    def closed(self) -> bool:
        return is_closed(self)


def is_closed(L: MatrixLieAlgebra) -> bool:
    """True iff every bracket of basis elements lies in the span."""
    B = L.basis
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            if bracket(B[i], B[j]) not in L:
                return False
    return True


def lie_closure(S: Sequence[Matrix], n: int | None = None, field: FieldSpec | None = None) -> MatrixLieAlgebra:
    """Smallest Lie algebra containing the span of ``S``."""
    L = MatrixLieAlgebra.span(list(S), n, field)
    while True:
        new = [bracket(a, b) for i, a in enumerate(L.basis) for b in L.basis[i + 1:]]
        new = [c for c in new if c not in L]
        if not new:
            return L
        L = MatrixLieAlgebra.span(list(L.basis) + new, L.n, L.field)


def is_abelian(L: MatrixLieAlgebra) -> bool:
    B = L.basis
    return all(bracket(B[i], B[j]).is_zero() for i in range(len(B)) for j in range(i + 1, len(B)))


@dataclass(frozen=True)
class StructureConstants:
    """``c[i][j][k]`` is the coefficient of ``b_k`` in ``[b_i, b_j]``."""

    dim: int
    field: FieldSpec
    c: tuple[tuple[tuple[Scalar, ...], ...], ...]

    def is_skew(self) -> bool:
        d = self.dim
        return all(self.c[i][j][k] == -self.c[j][i][k] for i in range(d) for j in range(d) for k in range(d))

    def satisfies_jacobi(self) -> bool:
        # sum_l c_ij^l c_lk^m + c_jk^l c_li^m + c_ki^l c_lj^m = 0
        d, c, z = self.dim, self.c, self.field.zero
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for m in range(d):
                        s = z
                        for l in range(d):
                            s = s + c[i][j][l] * c[l][k][m] + c[j][k][l] * c[l][i][m] + c[k][i][l] * c[l][j][m]
                        if s:
                            return False
        return True

    def bracket_coords(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple[Scalar, ...]:
        d, z = self.dim, self.field.zero
        out = [z] * d
        for i in range(d):
            if not u[i]:
                continue
            for j in range(d):
                if not v[j]:
                    continue
                f = u[i] * v[j]
                for k in range(d):
                    if self.c[i][j][k]:
                        out[k] = out[k] + f * self.c[i][j][k]
        return tuple(out)


def structure_constants_of(basis: Sequence[Matrix]) -> StructureConstants:
    """Structure constants in a caller-chosen linearly independent basis."""
    if not basis:
        return StructureConstants(0, QQ, ())
    n, F = basis[0].rows, basis[0].field
    stacked = Matrix._raw(F, [b.flatten() for b in basis], n * n)
    res = rref(stacked)
    if res.rank != len(basis):
        raise ValueError("basis elements are linearly dependent")
    cols = stacked.T
    c = []
    for bi in basis:
        row = []
        for bj in basis:
            try:
                row.append(solve(cols, bracket(bi, bj).flatten()))
            except Inconsistent as exc:
                raise NotClosed("bracket leaves the span") from exc
        c.append(tuple(row))
    return StructureConstants(len(basis), F, tuple(c))


def structure_constants(L: MatrixLieAlgebra) -> StructureConstants:
    """Structure constants of ``L`` in its stored canonical basis."""
    d = L.dim
    c = []
    for i in range(d):
        row = []
        for j in range(d):
            coords = L.coordinates(bracket(L.basis[i], L.basis[j]))
            if coords is None:
                raise NotClosed(f"[b{i}, b{j}] is not in the span")
            row.append(coords)
        c.append(tuple(row))
    return StructureConstants(d, L.field, tuple(c))


def adjoint_rep(sc: StructureConstants) -> list[Matrix]:
    """Matrices of ``ad_{b_i}``: entry ``[k][j]`` is ``c[i][j][k]``."""
    d = sc.dim
    return [
        Matrix._raw(sc.field, [[sc.c[i][j][k] for j in range(d)] for k in range(d)], d)
        for i in range(d)
    ]


def bracket_spaces(A: MatrixLieAlgebra, B: MatrixLieAlgebra) -> MatrixLieAlgebra:
    """The span of all ``[a, b]`` with ``a`` in A and ``b`` in B."""
    return MatrixLieAlgebra.span([bracket(a, b) for a in A.basis for b in B.basis], A.n, A.field)


def derived_series(L: MatrixLieAlgebra) -> list[MatrixLieAlgebra]:
    """``L, [L,L], [[L,L],[L,L]], ...`` up to the first repeated dimension."""
    series = [L]
    while True:
        nxt = bracket_spaces(series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def lower_central_series(L: MatrixLieAlgebra) -> list[MatrixLieAlgebra]:
    """``L, [L,L], [L,[L,L]], ...`` up to the first repeated dimension."""
    series = [L]
    while True:
        nxt = bracket_spaces(L, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def is_solvable(L: MatrixLieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_nilpotent(L: MatrixLieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0
