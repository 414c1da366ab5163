"""Equivalence of pre-decomposed completely reducible instances.

An instance couples an ``r x a`` weight matrix ``W`` (one row per irreducible
constituent) with a Problem A instance on the same ``r`` rows.  Instances 1
and 2 are equivalent when one row permutation ``pi`` serves both parts:

    W1 == P_pi W2 T          for some invertible a x a matrix T
    M1[i][j] == g_j(M2[pi i][sigma j])

The search pins the lexicographically first invertible row block of ``W1`` to
the identity, tries every ordered row tuple of ``W2`` with an invertible block,
and hands the normalized weight rows to Problem A as row colors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, factorial

from .errors import FieldMismatch
from .linalg import Matrix, rank, rref_with_transform
from .problem_a import (
    DEFAULT_BUDGET,
    ProblemAInstance,
    ProblemAWitness,
    SolveStats,
    solve,
    verify_witness,
)


@dataclass(frozen=True)
class CRInstance:
    weights: Matrix
    pa: ProblemAInstance

    def __post_init__(self):
        if self.weights.rows != self.pa.r:
            raise ValueError("weight rows and Problem A rows must coincide")

    @property
    def r(self) -> int:
        return self.weights.rows

    @property
    def a(self) -> int:
        return self.weights.cols

    @property
    def s(self) -> int:
        return self.pa.s

    @property
    def field(self):
        return self.weights.field


@dataclass(frozen=True)
class CRWitness:
    pa_witness: ProblemAWitness
    abelian_change: Matrix


@dataclass
class CRStats:
    candidates: int = 0
    pa: SolveStats = field(default_factory=SolveStats)


def candidate_bound(r: int, a: int) -> int:
    """``C(r, a) * a!``, the number of ordered pivot tuples."""
    return comb(r, a) * factorial(a)


def verify_cr_witness(I1: CRInstance, I2: CRInstance, w: CRWitness) -> bool:
    """Re-check both identities of a combined witness."""
    if (I1.r, I1.a, I1.field) != (I2.r, I2.a, I2.field):
        return False
    T = w.abelian_change
    if T.shape != (I1.a, I1.a) or not T.is_invertible():
        return False
    if not verify_witness(I1.pa, I2.pa, w.pa_witness):
        return False
    P = Matrix.permutation(w.pa_witness.row_perm, I1.field)
    return I1.weights == P @ I2.weights @ T


def _column_reduce(W: Matrix) -> tuple[Matrix, Matrix, int]:
    """``(W', T, k)`` with ``W T == [W' | 0]`` and ``W'`` of full column rank ``k``."""
    res, Q = rref_with_transform(W.T)
    T = Q.T
    k = res.rank
    return (W @ T).submatrix(cols=range(k)), T, k


def _block_diag(T: Matrix, extra: int) -> Matrix:
    F = T.field
    k = T.rows
    rows = [list(T.data[i]) + [F.zero] * extra for i in range(k)]
    rows += [[F.zero] * k + [F.one if c == i else F.zero for c in range(extra)] for i in range(extra)]
    return Matrix._raw(F, rows, k + extra)


def _normalized_rows(W: Matrix, rows) -> tuple[list[tuple], Matrix] | None:
    B = W.submatrix(rows=rows)
    try:
        Binv = B.inverse()
    except ZeroDivisionError:
        return None
    N = W @ Binv
    return [tuple(N.data[i]) for i in range(N.rows)], Binv


def _solve_full_rank(W1: Matrix, W2: Matrix, pa1: ProblemAInstance, pa2: ProblemAInstance,
                     budget: int, stats: CRStats) -> tuple[ProblemAWitness, Matrix] | None:
    r, a = W1.rows, W1.cols
    S1 = None
    for S in combinations(range(r), a):
        if rank(W1.submatrix(rows=S)) == a:
            S1 = S
            break
    if S1 is None:
        return None
    colors1, B1inv = _normalized_rows(W1, S1)
    B1 = B1inv.inverse()
    inst1 = pa1.with_row_colors([(pa1.row_color(i), c) for i, c in enumerate(colors1)])
    for S in combinations(range(r), a):
        if rank(W2.submatrix(rows=S)) < a:
            continue
        for t in permutations(S):
            stats.candidates += 1
            colors2, B2inv = _normalized_rows(W2, t)
            inst2 = pa2.with_row_colors([(pa2.row_color(i), c) for i, c in enumerate(colors2)])
            w = solve(inst1, inst2, budget, stats.pa)
            if w is not None:
                return w, B2inv @ B1
    return None


def cr_equivalent(I1: CRInstance, I2: CRInstance, budget: int = DEFAULT_BUDGET,
                  stats: CRStats | None = None) -> CRWitness | None:
    """A verified combined witness, or None when the instances are not equivalent."""
    stats = CRStats() if stats is None else stats
    if I1.field != I2.field:
        raise FieldMismatch(f"{I1.field} vs {I2.field}")
    if (I1.r, I1.a, I1.s) != (I2.r, I2.a, I2.s):
        return None
    if (I1.pa.blocks, I1.pa.groups) != (I2.pa.blocks, I2.pa.groups):
        return None
    W1r, T1, k1 = _column_reduce(I1.weights)
    W2r, T2, k2 = _column_reduce(I2.weights)
    if k1 != k2:
        return None
    hit = _solve_full_rank(W1r, W2r, I1.pa, I2.pa, budget, stats)
    if hit is None:
        return None
    pw, Tr = hit
    T = T2 @ _block_diag(Tr, I1.a - k1) @ T1.inverse()
    w = CRWitness(pw, T)
    if not verify_cr_witness(I1, I2, w):
        raise AssertionError("internal error: combined witness failed verification")
    return w
