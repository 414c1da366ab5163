"""Conjugacy of abelian diagonalizable matrix Lie algebras.

After simultaneous diagonalization each algebra is described by its weight
matrix: row ``k`` is the diagonal of the ``k``-th diagonalized basis element.
Two such algebras are conjugate exactly when the row spaces of their weight
matrices are permutation-equivalent codes, and the conjugator is assembled from
the two diagonalizers and the permutation matrix.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .codes import Code, CodeStats, code_equivalent
from .errors import FieldMismatch, NotAbelian, ShapeMismatch
from .fields import Scalar
from .lie import MatrixLieAlgebra, is_abelian
from .linalg import Matrix, simultaneous_diagonalize


@dataclass(frozen=True)
class WeightTable:
    d: int
    n: int
    weights: tuple[tuple[Scalar, ...], ...]  # n rows of length d
    weight_spaces: tuple[tuple[int, ...], ...]

    def weight_matrix(self, field) -> Matrix:
        """The ``d x n`` matrix whose row ``k`` is the diagonal of the ``k``-th basis element."""
        return Matrix._raw(field, [[self.weights[i][k] for i in range(self.n)] for k in range(self.d)], self.n)

    def space_dims(self) -> Counter:
        return Counter(len(c) for c in self.weight_spaces)


@dataclass
class AbelianStats:
    codes: CodeStats = field(default_factory=CodeStats)
    fast_fail: str | None = None


def weight_table(L: MatrixLieAlgebra) -> tuple[Matrix, WeightTable]:
    """Simultaneously diagonalize ``L`` and read off the weight of every coordinate."""
    if not is_abelian(L):
        raise NotAbelian("the algebra has non-commuting basis elements")
    n, F = L.n, L.field
    if L.dim == 0:
        g = Matrix.identity(n, F)
        diag_basis = []
    else:
        g = simultaneous_diagonalize(list(L.basis))
        g_inv = g.inverse()
        diag_basis = [g @ b @ g_inv for b in L.basis]
    weights = tuple(tuple(D[i, i] for D in diag_basis) for i in range(n))
    cells: dict = {}
    for i, w in enumerate(weights):
        cells.setdefault(w, []).append(i)
    spaces = tuple(tuple(c) for c in cells.values())
    return g, WeightTable(L.dim, n, weights, spaces)


@dataclass(frozen=True)
class ConjugacyWitness:
    g: Matrix


def verify_conjugacy(L1: MatrixLieAlgebra, L2: MatrixLieAlgebra, g: Matrix) -> bool:
    """Exact check that ``g L1 g^-1 == L2``."""
    if g.shape != (L1.n, L1.n) or not g.is_invertible() or L1.dim != L2.dim:
        return False
    return L1.conjugate(g) == L2


def abelian_conjugate(L1: MatrixLieAlgebra, L2: MatrixLieAlgebra,
                      stats: AbelianStats | None = None) -> ConjugacyWitness | None:
    """A verified ``g`` with ``g L1 g^-1 == L2``, or None when the algebras are not conjugate."""
    stats = AbelianStats() if stats is None else stats
    if L1.field != L2.field:
        raise FieldMismatch(f"{L1.field} vs {L2.field}")
    if L1.n != L2.n:
        raise ShapeMismatch("algebras act on spaces of different dimension")
    n, F = L1.n, L1.field
    gA, WA = weight_table(L1)
    gB, WB = weight_table(L2)
    if L1.dim != L2.dim:
        stats.fast_fail = "dimension"
        return None
    if L1.dim == 0:
        return ConjugacyWitness(Matrix.identity(n, F))
    if WA.space_dims() != WB.space_dims():
        stats.fast_fail = "weight-space dimensions"
        return None
    CA = Code.from_generator(WA.weight_matrix(F))
    CB = Code.from_generator(WB.weight_matrix(F))
    pi = code_equivalent(CA, CB, stats.codes)
    if pi is None:
        return None
    g = gB.inverse() @ Matrix.permutation(pi, F) @ gA
    if not verify_conjugacy(L1, L2, g):
        raise AssertionError("internal error: assembled conjugator failed verification")
    return ConjugacyWitness(g)
