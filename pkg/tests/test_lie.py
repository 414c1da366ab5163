from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from lieconj.errors import NotClosed, ShapeMismatch
from lieconj.fields import QQ, FieldSpec
from lieconj.lie import (
    MatrixLieAlgebra,
    adjoint_rep,
    bracket,
    derived_series,
    is_abelian,
    is_closed,
    is_nilpotent,
    is_solvable,
    lie_closure,
    lower_central_series,
    structure_constants,
    structure_constants_of,
)
from lieconj.linalg import Matrix

from strategies import invertible_matrices, matrices

E = Matrix.from_rows([[0, 1], [0, 0]])
F_ = Matrix.from_rows([[0, 0], [1, 0]])
H = Matrix.from_rows([[1, 0], [0, -1]])


def units(n, F=QQ):
    return [Matrix.from_rows([[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)], F)
            for i in range(n) for j in range(n)]


def diagonal_algebra(n, F=QQ):
    return MatrixLieAlgebra.span([Matrix.diag([1 if k == i else 0 for k in range(n)], F) for i in range(n)])


def upper_triangular(n, strict=False):
    return MatrixLieAlgebra.span([u for k, u in enumerate(units(n)) if (k % n > k // n) or (not strict and k % n == k // n)])


def test_bracket_examples():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    assert bracket(A, A).is_zero()
    assert bracket(Matrix.identity(2), A).is_zero()
    assert bracket(E, F_) == H


def test_bracket_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        bracket(Matrix.identity(2), Matrix.identity(3))


def test_closure_predicates():
    assert is_closed(diagonal_algebra(3))
    assert is_closed(MatrixLieAlgebra.span([E]))
    assert not is_closed(MatrixLieAlgebra.span([E, F_]))


def test_lie_closure_examples():
    assert lie_closure([E, F_]).dim == 3
    assert lie_closure([Matrix.from_rows([[1, 2], [3, 4]])]).dim == 1
    D = diagonal_algebra(3)
    assert lie_closure(list(D.basis)) == D


def test_abelian_examples():
    assert is_abelian(diagonal_algebra(3))
    assert not is_abelian(lie_closure([E, F_]))
    assert is_abelian(MatrixLieAlgebra.span([], n=2))


def test_sl2_structure_constants():
    sc = structure_constants_of([E, F_, H])
    one, two = QQ(1), QQ(2)
    assert sc.c[0][1] == (0, 0, one)  # [e, f] = h
    assert sc.c[2][0] == (two, 0, 0)  # [h, e] = 2e
    assert sc.c[2][1] == (0, -two, 0)  # [h, f] = -2f
    ad_h = adjoint_rep(sc)[2]
    assert ad_h == Matrix.diag([2, -2, 0])


def test_structure_constants_trivial_cases():
    sc = structure_constants(diagonal_algebra(3))
    assert all(not x for a in sc.c for b in a for x in b)
    sc1 = structure_constants(MatrixLieAlgebra.span([E]))
    assert sc1.c == (((QQ(0),),),)
    assert adjoint_rep(sc1) == [Matrix.zeros(1, 1)]
    assert all(m.is_zero() for m in adjoint_rep(structure_constants(diagonal_algebra(2))))


def test_structure_constants_not_closed():
    with pytest.raises(NotClosed):
        structure_constants(MatrixLieAlgebra.span([E, F_]))


def test_series_examples():
    strict = upper_triangular(2, strict=True)
    assert is_nilpotent(strict) and is_solvable(strict)
    b = upper_triangular(2)
    assert b.dim == 3
    assert is_solvable(b) and not is_nilpotent(b)
    assert [x.dim for x in derived_series(b)] == [3, 1, 0]
    assert [x.dim for x in lower_central_series(b)] == [3, 1]
    sl2 = lie_closure([E, F_])
    assert [x.dim for x in derived_series(sl2)] == [3]
    assert not is_solvable(sl2)


def test_membership_and_coordinates():
    sl2 = lie_closure([E, F_])
    assert H in sl2
    assert Matrix.identity(2) not in sl2
    coords = sl2.coordinates(E.scale(3) + H)
    recon = Matrix.zeros(2, 2)
    for c, b in zip(coords, sl2.basis):
        recon = recon + b.scale(c)
    assert recon == E.scale(3) + H


# -- properties ----------------------------------------------------------------------

@st.composite
def closed_algebras(draw):
    F = draw(st.sampled_from([QQ, FieldSpec(5)]))
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 3))
    gens = [draw(matrices(F, n, n)) for _ in range(k)]
    return lie_closure(gens, n, F)


@given(closed_algebras())
def test_closure_is_closed(L):
    assert is_closed(L)


@given(closed_algebras())
def test_structure_constants_skew_and_jacobi(L):
    sc = structure_constants(L)
    assert sc.is_skew()
    assert sc.satisfies_jacobi()


@given(closed_algebras())
def test_adjoint_is_homomorphism(L):
    sc = structure_constants(L)
    ad = adjoint_rep(sc)
    d = L.dim
    for i in range(d):
        for j in range(d):
            lhs = bracket(ad[i], ad[j])
            rhs = Matrix.zeros(d, d, L.field)
            for k, c in enumerate(sc.c[i][j]):
                rhs = rhs + ad[k].scale(c)
            assert lhs == rhs


@given(st.data())
def test_conjugation_preserves_structure_constants(data):
    L = data.draw(closed_algebras())
    g = data.draw(invertible_matrices(L.field, L.n))
    gi = g.inverse()
    conj = [g @ b @ gi for b in L.basis]
    assert structure_constants_of(conj).c == structure_constants_of(list(L.basis)).c


@given(closed_algebras())
def test_derived_terms_inside_lower_central_terms(L):
    der, low = derived_series(L), lower_central_series(L)
    for a, b in zip(der, low):
        assert b.contains_algebra(a)
