from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from lieconj.abelian import AbelianStats, abelian_conjugate, verify_conjugacy, weight_table
from lieconj.errors import FieldMismatch, NotAbelian, NotDiagonalizableOverField, ShapeMismatch
from lieconj.fields import QQ, FieldSpec
from lieconj.generators import diagonal_algebra, perturbed_abelian_pair, planted_abelian_pair, scramble
from lieconj.lie import MatrixLieAlgebra
from lieconj.linalg import Matrix

from oracles import codes_equivalent_backtrack


def span(*mats):
    return MatrixLieAlgebra.span(list(mats))


def diag(*xs):
    return Matrix.diag(list(xs))


def test_weight_table_single_diagonal():
    g, W = weight_table(span(diag(1, 1, 2)))
    assert g == Matrix.identity(3)
    assert W.weights == ((1,), (1,), (2,))
    assert W.weight_spaces == ((0, 1), (2,))


def test_weight_table_full_diagonal():
    L = MatrixLieAlgebra.span([diag(1, 0, 0), diag(0, 1, 0), diag(0, 0, 1)])
    _, W = weight_table(L)
    assert W.d == 3 and len(W.weight_spaces) == 3


def test_weight_table_swap_matrix():
    _, W = weight_table(span(Matrix.from_rows([[0, 1], [1, 0]])))
    assert sorted(w[0] for w in W.weights) == [-1, 1]


def test_weight_table_errors():
    E = Matrix.from_rows([[0, 1], [0, 0]])
    F_ = Matrix.from_rows([[0, 0], [1, 0]])
    with pytest.raises(NotAbelian):
        weight_table(MatrixLieAlgebra.span([E, F_]))
    with pytest.raises(NotDiagonalizableOverField):
        weight_table(span(E))


def test_self_conjugate():
    L = span(diag(1, 2, 3))
    w = abelian_conjugate(L, L)
    assert w.g == Matrix.identity(3)


def test_cyclic_permutation():
    L1, L2 = span(diag(1, 2, 3)), span(diag(3, 1, 2))
    w = abelian_conjugate(L1, L2)
    assert w is not None and verify_conjugacy(L1, L2, w.g)
    assert all(sum(1 for x in row if x) == 1 for row in w.g.data)
    assert w.g != Matrix.identity(3)


def test_repeated_eigenvalue_example_is_not_conjugate():
    # eigenvalues {1,1,2} are never c*{1,2,2}; the backtracking oracle agrees
    L1, L2 = span(diag(1, 1, 2)), span(diag(1, 2, 2))
    assert abelian_conjugate(L1, L2) is None
    assert not codes_equivalent_backtrack([[1, 1, 2]], [[1, 2, 2]])


def test_zero_pattern_example():
    L1, L2 = span(diag(1, 0, 0)), span(diag(1, 1, 0))
    assert abelian_conjugate(L1, L2) is None
    assert not codes_equivalent_backtrack([[1, 0, 0]], [[1, 1, 0]])


def test_scaled_generator_is_conjugate():
    L1, L2 = span(diag(1, 1, 2)), span(diag(2, 4, 2))
    w = abelian_conjugate(L1, L2)
    assert w is not None and verify_conjugacy(L1, L2, w.g)


def test_zero_algebras():
    Z = MatrixLieAlgebra.span([], n=3)
    assert abelian_conjugate(Z, Z).g == Matrix.identity(3)
    st_ = AbelianStats()
    assert abelian_conjugate(Z, span(diag(1, 0, 0)), st_) is None
    assert st_.fast_fail == "dimension"


def test_fast_fail_on_weight_space_sizes():
    st_ = AbelianStats()
    assert abelian_conjugate(span(diag(1, 1, 2)), span(diag(1, 2, 3)), st_) is None
    assert st_.fast_fail == "weight-space dimensions"


def test_shape_and_field_errors():
    with pytest.raises(ShapeMismatch):
        abelian_conjugate(span(diag(1, 2)), span(diag(1, 2, 3)))
    F5 = FieldSpec(5)
    with pytest.raises(FieldMismatch):
        abelian_conjugate(span(diag(1, 2)), MatrixLieAlgebra.span([Matrix.diag([1, 2], F5)]))


def test_nondiagonal_conjugates():
    A = Matrix.from_rows([[1, 1], [0, 2]])
    L1, L2 = span(A), span(diag(2, 1))
    w = abelian_conjugate(L1, L2)
    assert w is not None and verify_conjugacy(L1, L2, w.g)


# -- properties --------------------------------------------------------------------

FIELDS = [QQ, FieldSpec(5), FieldSpec(7)]


@st.composite
def planted(draw):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    F = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, 6))
    d = draw(st.integers(1, min(3, n)))
    return planted_abelian_pair(n, d, F, rng)


@settings(max_examples=60)
@given(planted())
def test_planted_completeness(pair):
    L1, L2, _ = pair
    w = abelian_conjugate(L1, L2)
    assert w is not None and verify_conjugacy(L1, L2, w.g)


@settings(max_examples=60)
@given(planted())
def test_weight_space_sizes_are_invariant(pair):
    L1, L2, _ = pair
    assert weight_table(L1)[1].space_dims() == weight_table(L2)[1].space_dims()


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1), st.sampled_from(FIELDS))
def test_perturbed_pairs_agree_with_oracle(seed, F):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    d = rng.randint(1, min(3, n))
    L1, L2, W1, W2 = perturbed_abelian_pair(n, d, F, rng)
    want = codes_equivalent_backtrack([list(r) for r in W1.data], [list(r) for r in W2.data], F.p)
    w = abelian_conjugate(L1, L2)
    assert (w is not None) == want
    if w is not None:
        assert verify_conjugacy(L1, L2, w.g)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_scrambled_pairs_verify_both_ways(seed):
    rng = random.Random(seed)
    D = span(diag(1, 2, 2, 3))
    L = scramble(D, rng)
    w = abelian_conjugate(D, L)
    assert verify_conjugacy(D, L, w.g)
    back = abelian_conjugate(L, D)
    assert verify_conjugacy(L, D, back.g)


def test_diagonal_algebra_of_weight_matrix():
    W = Matrix.from_rows([[1, 0, 1], [0, 1, 1]])
    D = diagonal_algebra(W)
    _, T = weight_table(D)
    assert T.d == 2 and len(T.weight_spaces) == 3
