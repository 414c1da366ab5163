from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from lieconj.codes import (
    Code,
    CodeStats,
    brute_force_code_equivalent,
    code_equivalent,
    gi_to_code,
    hamming_weight,
    nondegenerate_combination_weights,
    verify_code_witness,
)
from lieconj.errors import FieldMismatch
from lieconj.fields import QQ, FieldSpec
from lieconj.generators import planted_code_pair, random_code, random_graph, relabel_graph
from lieconj.graphs import ColoredGraph, find_isomorphism
from lieconj.linalg import Matrix

from oracles import codes_equivalent_backtrack
from strategies import matrices, permutations_of

F2, F3 = FieldSpec(2), FieldSpec(3)


def code(rows, F=QQ, cols=None):
    return Code.from_generator(Matrix.from_rows(rows, F, cols=cols))


def test_code_against_itself():
    C = code([[1, 2, 0, 1], [0, 1, 1, 3]])
    assert code_equivalent(C, C) == (0, 1, 2, 3)


def test_swap_example():
    C1, C2 = code([[1, 0, 0]]), code([[0, 0, 1]])
    assert verify_code_witness(C1, C2, (2, 1, 0))
    pi = code_equivalent(C1, C2)
    # any verifying witness is acceptable; the search returns the first it meets
    assert pi is not None and verify_code_witness(C1, C2, pi)
    assert pi[2] == 0


def test_weight_mismatch_example():
    assert code_equivalent(code([[1, 0, 0]], F2), code([[1, 1, 0]], F2)) is None
    assert brute_force_code_equivalent(code([[1, 0, 0]], F2), code([[1, 1, 0]], F2)) is None


def test_dimension_or_length_mismatch_is_not_equivalent():
    assert code_equivalent(code([[1, 0, 0]]), code([[1, 0, 0], [0, 1, 0]])) is None
    assert code_equivalent(code([[1, 0]]), code([[1, 0, 0]])) is None


def test_field_mismatch_raises():
    with pytest.raises(FieldMismatch):
        code_equivalent(code([[1, 0]]), code([[1, 0]], F2))


def test_zero_and_full_codes():
    z1 = Code.from_generator(Matrix.zeros(0, 3))
    assert code_equivalent(z1, z1) == (0, 1, 2)
    full = code([[1, 0], [0, 1]])
    assert code_equivalent(full, code([[1, 1], [1, -1]])) is not None


def test_witness_convention():
    # (pi . v)[i] = v[pi[i]]
    C1 = code([[1, 2, 3]])
    C2 = code([[2, 3, 1]])
    pi = code_equivalent(C1, C2)
    assert pi == (1, 2, 0)


def test_graph_route_agrees():
    rng = random.Random(7)
    for _ in range(20):
        C1, C2 = planted_code_pair(6, 2, F3, rng)
        a = code_equivalent(C1, C2)
        b = code_equivalent(C1, C2, via_graph=True)
        assert a is not None and b is not None
        assert verify_code_witness(C1, C2, a) and verify_code_witness(C1, C2, b)


def test_stats_count_information_sets():
    st_ = CodeStats()
    C = code([[1, 0, 1, 1], [0, 1, 1, 0]], F2)
    code_equivalent(C, C, st_)
    assert 1 <= st_.information_sets <= 6


# -- reduction from graph isomorphism ------------------------------------------------

def test_single_edge_generator():
    G = ColoredGraph.build(2, [(0, 1)])
    assert gi_to_code(G, F2) == Matrix.from_rows([[1, 1, 1, 1, 1]], F2)


def test_triangle_generator():
    G = ColoredGraph.build(3, [(0, 1), (1, 2), (0, 2)])
    M = gi_to_code(G, F3)
    assert (M.rows, M.cols) == (3, 12)
    assert all(hamming_weight(r) == 5 for r in M.data)
    # rows follow edges (0,1), (0,2), (1,2)
    assert [list(r[9:]) for r in M.data] == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    for k in (2, 3):
        assert min(nondegenerate_combination_weights(M, k)) >= 6


def test_relabelled_graph_gives_equivalent_code():
    rng = random.Random(3)
    for _ in range(10):
        G = random_graph(4, rng, p=0.5)
        if not G.edges:
            continue
        H = relabel_graph(G, list(rng.sample(range(4), 4)))
        C1, C2 = Code.from_generator(gi_to_code(G, F2)), Code.from_generator(gi_to_code(H, F2))
        pi = code_equivalent(C1, C2)
        assert pi is not None and verify_code_witness(C1, C2, pi)


def test_nonisomorphic_same_size_graphs_give_inequivalent_codes():
    path = ColoredGraph.build(4, [(0, 1), (1, 2), (2, 3)])
    star = ColoredGraph.build(4, [(0, 1), (0, 2), (0, 3)])
    assert find_isomorphism(path, star) is None
    for F in (F2, F3):
        C1, C2 = Code.from_generator(gi_to_code(path, F)), Code.from_generator(gi_to_code(star, F))
        assert code_equivalent(C1, C2) is None


# -- properties --------------------------------------------------------------------

@st.composite
def code_pairs(draw):
    F = draw(st.sampled_from([QQ, F2, F3]))
    n = draw(st.integers(1, 6))
    d = draw(st.integers(0, min(3, n)))
    C1 = Code.from_generator(draw(matrices(F, d, n)))
    if draw(st.booleans()):
        pi = draw(permutations_of(n))
        C2 = C1.permuted(pi)
    else:
        C2 = Code.from_generator(draw(matrices(F, d, n)))
    return C1, C2


@given(code_pairs())
def test_agrees_with_independent_oracle(pair):
    C1, C2 = pair
    pi = code_equivalent(C1, C2)
    G1 = [list(r) for r in C1.generator.data]
    G2 = [list(r) for r in C2.generator.data]
    if C1.dim != C2.dim:
        assert pi is None
        return
    want = codes_equivalent_backtrack(G1, G2, C1.field.p) if G1 else True
    assert (pi is not None) == want
    if pi is not None:
        assert verify_code_witness(C1, C2, pi)


@given(code_pairs())
def test_agrees_with_exhaustive_search(pair):
    C1, C2 = pair
    a = code_equivalent(C1, C2)
    b = brute_force_code_equivalent(C1, C2)
    assert (a is None) == (b is None)


@given(code_pairs())
def test_symmetric(pair):
    C1, C2 = pair
    a, b = code_equivalent(C1, C2), code_equivalent(C2, C1)
    assert (a is None) == (b is None)
    if a is not None:
        inv = [0] * len(a)
        for i, x in enumerate(a):
            inv[x] = i
        assert verify_code_witness(C2, C1, inv)


def test_pr_weights_on_small_graphs():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(2, 5)
        G = random_graph(n, rng, p=0.5)
        if not G.edges or len(G.edges) > 5:
            continue
        for F in (F2, F3):
            M = gi_to_code(G, F)
            assert all(hamming_weight(r) == 5 for r in M.data)
            for k in (2, 3):
                if M.rows >= k:
                    assert min(nondegenerate_combination_weights(M, k)) >= 6


def test_random_code_dimension():
    rng = random.Random(5)
    for _ in range(10):
        C = random_code(6, 3, F3, rng)
        assert C.dim <= 3 and C.n == 6
        assert list(C.pivots) == sorted(C.pivots)
        assert all(C.generator[i, p] == 1 for i, p in enumerate(C.pivots))
        assert all(C.generator[k, p] == 0 for i, p in enumerate(C.pivots) for k in range(C.dim) if k != i)
