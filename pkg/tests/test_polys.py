from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lieconj.errors import ShapeMismatch
from lieconj.fields import QQ, FieldSpec
from lieconj.lie import is_closed
from lieconj.linalg import Matrix
from lieconj.polys import DensePolynomial, apply_derivation, det_poly, perm_poly, symmetry_lie_algebra

from strategies import invertible_matrices, matrices


def poly(m, terms, F=QQ):
    return DensePolynomial(m, terms, F)


def to_sympy(f: DensePolynomial, xs):
    out = sympy.Integer(0)
    for e, c in f.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for x, k in zip(xs, e):
            t *= x ** k
        out += t
    return sympy.expand(out)


def test_det_examples():
    assert det_poly(1) == DensePolynomial.variable(1, 0)
    assert det_poly(2) == poly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
    assert len(det_poly(3).terms) == 6


def test_det3_matches_cofactor_expansion():
    xs = sympy.symbols("x0:9")
    assert to_sympy(det_poly(3), xs) == sympy.expand(sympy.Matrix(3, 3, xs).det(method="berkowitz"))
    assert len(perm_poly(3).terms) == 6
    assert all(c == 1 for c in perm_poly(3).terms.values())


def test_derivation_examples():
    f = poly(2, {(1, 1): 1})
    assert apply_derivation(Matrix.zeros(2, 2), f).is_zero()
    assert apply_derivation(Matrix.diag([1, -1]), f).is_zero()
    g = poly(2, {(2, 1): 3, (0, 3): -1})
    assert apply_derivation(Matrix.identity(2), g) == g.scale(3)


def test_derivation_shape_error():
    with pytest.raises(ShapeMismatch):
        apply_derivation(Matrix.identity(3), poly(2, {(1, 0): 1}))


def test_symmetry_dimensions():
    assert symmetry_lie_algebra(DensePolynomial.constant(2, 5)).dim == 4
    assert symmetry_lie_algebra(det_poly(2)).dim == 6
    assert symmetry_lie_algebra(perm_poly(2)).dim == 6
    assert symmetry_lie_algebra(DensePolynomial.zero(3)).dim == 9


def test_single_variable_power():
    # x0^2 on two variables: A must kill row 0 of the derivation, so A[0][*] = 0
    L = symmetry_lie_algebra(poly(2, {(2, 0): 1}))
    assert L.dim == 2
    assert all(b[0, 0] == 0 and b[0, 1] == 0 for b in L.basis)


def test_det_symmetry_is_traceless():
    L = symmetry_lie_algebra(det_poly(2))
    assert Matrix.identity(4) not in L
    assert all(sum(b[i, i] for i in range(4)) == 0 for b in L.basis)


def test_compose_linear_negates_variable():
    g = Matrix.diag([1, -1, 1, 1])
    assert perm_poly(2).compose_linear(g) == det_poly(2)


# -- properties --------------------------------------------------------------------

@st.composite
def polys(draw, F=QQ, max_m=3, max_terms=4, max_deg=3):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(m))
        terms[e] = draw(st.integers(-3, 3))
    return DensePolynomial(m, terms, F)


@given(st.data())
def test_derivation_matches_sympy(data):
    f = data.draw(polys())
    A = data.draw(matrices(QQ, f.m, f.m))
    xs = sympy.symbols(f"x0:{f.m}")
    fs = to_sympy(f, xs)
    want = sum(sympy.Rational(A[i, j].numerator, A[i, j].denominator) * xs[j] * sympy.diff(fs, xs[i])
               for i in range(f.m) for j in range(f.m))
    assert to_sympy(apply_derivation(A, f), xs) == sympy.expand(want)


@settings(max_examples=40)
@given(polys())
def test_symmetry_algebra_is_closed_and_kills_f(f):
    L = symmetry_lie_algebra(f)
    assert is_closed(L)
    for b in L.basis:
        assert apply_derivation(b, f).is_zero()


@settings(max_examples=40)
@given(st.data())
def test_covariance_under_linear_substitution(data):
    F = data.draw(st.sampled_from([QQ, FieldSpec(7)]))
    f = data.draw(polys(F=F, max_m=3, max_deg=2))
    g = data.draw(invertible_matrices(F, f.m))
    lhs = symmetry_lie_algebra(f.compose_linear(g))
    rhs = symmetry_lie_algebra(f).conjugate(g.inverse(), g)
    assert lhs == rhs


@given(st.data())
def test_compose_linear_matches_evaluation(data):
    f = data.draw(polys(max_deg=2))
    g = data.draw(matrices(QQ, f.m, f.m))
    pt = [Fraction(data.draw(st.integers(-3, 3))) for _ in range(f.m)]
    assert f.compose_linear(g).evaluate(pt) == f.evaluate(g.apply(pt))


@settings(max_examples=40)
@given(polys())
def test_euler_identity(f):
    homog = [DensePolynomial(f.m, {e: c for e, c in f.terms.items() if sum(e) == k})
             for k in range(f.degree() + 1)]
    for h in homog:
        if h.is_zero():
            continue
        n = h.degree()
        assert apply_derivation(Matrix.identity(f.m), h) == h.scale(n)
        assert (Matrix.identity(f.m) in symmetry_lie_algebra(h)) == (n == 0)
