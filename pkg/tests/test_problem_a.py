from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from lieconj.errors import BudgetExceeded, InvalidInstance, UnsupportedGroup
from lieconj.generators import (
    plant_problem_a,
    planted_problem_a_pair,
    random_blocks,
    random_kinds,
    random_pa_witness,
    random_problem_a,
)
from lieconj.graphs import ColoredGraph, automorphisms, find_isomorphism
from lieconj.problem_a import (
    GADGET_VERTICES,
    S3_ELEMENTS,
    BlockGroup,
    ProblemAInstance,
    ProblemAWitness,
    apply_witness,
    gadget_action,
    gi_to_problem_a,
    make_group,
    problem_a_to_gi,
    s3_color_gadget,
    solve,
    solve_boundedrows,
    solve_bruteforce,
    solve_via_gi,
    verify_witness,
)

from oracles import problem_a_bruteforce

TRIV12 = BlockGroup.trivial((1, 2))
SOLVERS = (solve_bruteforce, solve_boundedrows, solve_via_gi)


def inst(M, blocks, groups, row_colors=None):
    return ProblemAInstance(tuple(map(tuple, M)), tuple(blocks), tuple(groups), row_colors)


def compose(a, b):
    return tuple(a[i] for i in b)


# -- groups ----------------------------------------------------------------------

def test_group_validation():
    with pytest.raises(InvalidInstance):
        BlockGroup("S2", (0, 1), ((0, 1), (1, 0)))  # moves 0
    with pytest.raises(InvalidInstance):
        BlockGroup("S2", (1, 2, 3), ((1, 2, 3), (2, 3, 1)))  # not closed
    with pytest.raises(UnsupportedGroup):
        BlockGroup("Z5", (1,), ((1,),))
    g = make_group("S3", fixed=[0], triples=[(1, 2, 3)])
    assert g.order == 6 and g.elements[0] == g.alphabet
    assert g.orbits() == [(0,), (1, 2, 3)]


def test_group_inverse_and_generation():
    g = BlockGroup.generated("S3", (1, 2, 3), [{1: 2, 2: 1}, {1: 2, 2: 3, 3: 1}])
    assert g.order == 6
    for k in range(6):
        ki = g.inverse(k)
        assert all(g.apply(ki, g.apply(k, a)) == a for a in g.alphabet)


def test_regular_orbit_group():
    g = make_group("S3", regular=[(1, 2, 3, 4, 5, 6)])
    assert g.order == 6 and g.orbits() == [(1, 2, 3, 4, 5, 6)]


# -- solver examples --------------------------------------------------------------

def test_identical_instances():
    I = inst([[1, 2], [2, 1]], [2], [TRIV12])
    for solver in SOLVERS:
        w = solver(I, I)
        assert w is not None and verify_witness(I, I, w)
    assert solve_bruteforce(I, I) == ProblemAWitness((0, 1), (0, 1), (0, 0))


def test_single_row_column_swap():
    I1, I2 = inst([[1, 2]], [2], [TRIV12]), inst([[2, 1]], [2], [TRIV12])
    for solver in SOLVERS:
        w = solver(I1, I2)
        assert w.col_perm == (1, 0) and w.row_perm == (0,)


def test_entry_multisets_differ():
    I1, I2 = inst([[1], [2]], [1], [TRIV12]), inst([[1], [1]], [1], [TRIV12])
    for solver in SOLVERS:
        assert solver(I1, I2) is None
    assert not problem_a_bruteforce(I1, I2)


def test_within_block_swap_bounded_rows():
    I1 = inst([[1, 2, 1], [2, 2, 1]], [3], [TRIV12])
    I2 = inst([[2, 1, 1], [2, 2, 1]], [3], [TRIV12])
    w = solve_boundedrows(I1, I2)
    assert w is not None and w.row_perm == (0, 1)


def test_group_twist_needed():
    S2 = make_group("S2", pairs=[(1, 2)])
    I1, I2 = inst([[1], [1], [2]], [1], [S2]), inst([[2], [2], [1]], [1], [S2])
    for solver in SOLVERS:
        w = solver(I1, I2)
        assert w is not None and w.group_elems == (1,)
    T1, T2 = inst([[1], [1], [2]], [1], [TRIV12]), inst([[2], [2], [1]], [1], [TRIV12])
    assert all(solver(T1, T2) is None for solver in SOLVERS)


def test_blocks_are_preserved():
    T = BlockGroup.trivial((1, 2))
    I1 = inst([[1, 2]], [1, 1], [T, T])
    I2 = inst([[2, 1]], [1, 1], [T, T])
    assert all(solver(I1, I2) is None for solver in SOLVERS)


def test_row_colors_constrain_rows():
    I1 = inst([[1], [2]], [1], [TRIV12], row_colors=("a", "b"))
    I2 = inst([[2], [1]], [1], [TRIV12], row_colors=("a", "b"))
    assert all(solver(I1, I2) is None for solver in SOLVERS)
    I3 = inst([[2], [1]], [1], [TRIV12], row_colors=("b", "a"))
    for solver in SOLVERS:
        assert solver(I1, I3).row_perm == (1, 0)


def test_planted_bounded_rows_example():
    rng = random.Random(2)
    S2 = make_group("S2", fixed=[0], pairs=[(1, 2)])
    T = BlockGroup.trivial((0, 1, 2))
    I1 = inst([[rng.choice((0, 1, 2)) for _ in range(6)] for _ in range(3)], [3, 3], [S2, T])
    w = random_pa_witness(I1, rng)
    I2 = plant_problem_a(I1, w)
    a, b = solve_boundedrows(I1, I2), solve_bruteforce(I1, I2)
    assert a is not None and b is not None
    assert verify_witness(I1, I2, a) and verify_witness(I1, I2, b)


def test_budget_guard():
    T = BlockGroup.trivial((1, 2))
    I1 = inst([[1] * 6 + [2]], [7], [T])
    I2 = inst([[1] * 6 + [1]], [7], [T])
    with pytest.raises(BudgetExceeded):
        solve_boundedrows(I1, I2, budget=0)


def test_apply_witness_reconstructs_m1():
    rng = random.Random(9)
    for _ in range(20):
        I1, I2, w = planted_problem_a_pair(3, 4, rng)
        assert apply_witness(I2, w) == I1.M
        assert verify_witness(I1, I2, w)


# -- reduction from graph isomorphism ----------------------------------------------

def test_gi_to_problem_a_examples():
    tri = gi_to_problem_a(ColoredGraph.build(3, [(0, 1), (1, 2), (0, 2)]))
    assert tri.r == 3 and tri.s == 3
    assert all(sum(row) == 2 for row in tri.M)
    edge = gi_to_problem_a(ColoredGraph.build(2, [(0, 1)]))
    assert edge.M == ((1, 1),)
    path = gi_to_problem_a(ColoredGraph.build(3, [(0, 1), (1, 2)]))
    assert path.M == ((1, 1, 0), (0, 1, 1))


def small_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield ColoredGraph.build(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])


def test_incidence_reduction_matches_graph_iso():
    graphs = list(small_graphs(4))
    for G1 in graphs[::5]:
        for G2 in graphs:
            if len(G1.edges) != len(G2.edges):
                continue
            iso = find_isomorphism(G1, G2) is not None
            I1, I2 = gi_to_problem_a(G1), gi_to_problem_a(G2)
            assert (solve(I1, I2) is not None) == iso


# -- the color gadget ------------------------------------------------------------

# group element (as a map on 0,1,2) -> regular vertex, per the correspondence table
TABLE = {
    (0, 1, 2): "A12",
    (1, 2, 0): "A23",  # (123)
    (2, 0, 1): "A31",  # (132)
    (1, 0, 2): "B21",  # (12)
    (2, 1, 0): "B32",  # (13)
    (0, 2, 1): "B13",  # (23)
}


def sign(p):
    return 1 if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0 else -1


def test_gadget_shape():
    G = s3_color_gadget()
    assert G.n == 11 == len(GADGET_VERTICES)


def test_gadget_automorphisms():
    auts = automorphisms(s3_color_gadget())
    assert len(auts) == 6
    assert sorted(tuple(a[:3]) for a in auts) == sorted(S3_ELEMENTS)
    ix = {v: i for i, v in enumerate(GADGET_VERTICES)}
    for a in auts:
        s = tuple(a[:3])
        AB = (a[ix["A"]], a[ix["B"]])
        if sign(s) > 0:
            assert AB == (ix["A"], ix["B"])
        else:
            assert AB == (ix["B"], ix["A"])


def test_gadget_regular_correspondence():
    ix = {v: i for i, v in enumerate(GADGET_VERTICES)}
    act = gadget_action()
    for s, a in act.items():
        for t, v in TABLE.items():
            assert a[ix[v]] == ix[TABLE[compose(s, t)]]


def test_trivial_palette_example():
    I = inst([[1]], [1], [BlockGroup.trivial((1,))])
    gg = problem_a_to_gi(I)
    # row, column, cell, and a 2-vertex palette line
    assert gg.graph.n == 5
    assert solve_via_gi(I, I) == ProblemAWitness((0,), (0,), (0,))


def test_unsupported_group_kind():
    with pytest.raises(UnsupportedGroup):
        make_group("A4", fixed=[1])


# -- properties ---------------------------------------------------------------------

@st.composite
def pa_pairs(draw, max_r=4, max_s=4):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    r = draw(st.integers(1, max_r))
    s = draw(st.integers(1, max_s))
    blocks = random_blocks(s, rng)
    I1 = random_problem_a(r, blocks, random_kinds(len(blocks), rng), rng)
    if draw(st.booleans()):
        I2 = plant_problem_a(I1, random_pa_witness(I1, rng))
    else:
        M2 = [list(row) for row in plant_problem_a(I1, random_pa_witness(I1, rng)).M]
        i, j = rng.randrange(r), rng.randrange(s)
        alpha = I1.groups[I1.col_block[j]].alphabet
        M2[i][j] = rng.choice(alpha)
        I2 = ProblemAInstance(tuple(map(tuple, M2)), I1.blocks, I1.groups)
    return I1, I2


@given(pa_pairs())
def test_three_solvers_agree_with_oracle(pair):
    I1, I2 = pair
    want = problem_a_bruteforce(I1, I2)
    for solver in SOLVERS:
        w = solver(I1, I2)
        assert (w is not None) == want
        if w is not None:
            assert verify_witness(I1, I2, w)


@given(pa_pairs())
def test_symmetry(pair):
    I1, I2 = pair
    assert (solve(I1, I2) is None) == (solve(I2, I1) is None)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_transitivity(seed):
    rng = random.Random(seed)
    I1, I2, _ = planted_problem_a_pair(3, 4, rng)
    I3 = plant_problem_a(I2, random_pa_witness(I2, rng))
    w = solve(I1, I3)
    assert w is not None and verify_witness(I1, I3, w)
