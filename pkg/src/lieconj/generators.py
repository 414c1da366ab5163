"""Seeded generators for planted (equivalent) and perturbed instance pairs.

Every function takes a ``random.Random``; nothing here touches global state,
so a fixed seed reproduces the same instances.
"""

from __future__ import annotations

import random
from typing import Sequence

from .codes import Code
from .cr import CRInstance
from .fields import FieldSpec
from .graphs import ColoredGraph
from .lie import MatrixLieAlgebra
from .linalg import Matrix, rank
from .problem_a import BlockGroup, ProblemAInstance, ProblemAWitness, make_group


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed & (2**64 - 1))


def random_scalar(F: FieldSpec, rng: random.Random, lo: int = -3, hi: int = 3):
    if F.is_rational:
        return F(rng.randint(lo, hi))
    return F(rng.randrange(F.p))


def random_matrix(rows: int, cols: int, F: FieldSpec, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix.from_rows([[random_scalar(F, rng, lo, hi) for _ in range(cols)] for _ in range(rows)], F, cols=cols)


def random_invertible(n: int, F: FieldSpec, rng: random.Random) -> Matrix:
    while True:
        g = random_matrix(n, n, F, rng)
        if g.is_invertible():
            return g


def random_permutation(n: int, rng: random.Random) -> tuple[int, ...]:
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


# -- abelian algebras -----------------------------------------------------------------

def random_weight_matrix(n: int, d: int, F: FieldSpec, rng: random.Random) -> Matrix:
    """A rank-``d`` ``d x n`` matrix whose columns repeat often enough to give nontrivial weight spaces."""
    if d > n:
        raise ValueError("d cannot exceed n")
    while True:
        pool = max(1, rng.randint(d, n))
        vecs = [[random_scalar(F, rng, -2, 2) for _ in range(d)] for _ in range(pool)]
        cols = [vecs[rng.randrange(pool)] for _ in range(n)]
        W = Matrix.from_rows([[cols[i][k] for i in range(n)] for k in range(d)], F, cols=n)
        if rank(W) == d:
            return W


def diagonal_algebra(W: Matrix) -> MatrixLieAlgebra:
    """The span of ``diag(row)`` over the rows of a weight matrix."""
    return MatrixLieAlgebra.span([Matrix.diag(W.row(k), W.field) for k in range(W.rows)], W.cols, W.field)


def scramble(L: MatrixLieAlgebra, rng: random.Random) -> MatrixLieAlgebra:
    """Conjugate by a random invertible matrix and re-span through a random basis change."""
    F = L.field
    g = random_invertible(L.n, F, rng)
    conj = L.conjugate(g)
    if conj.dim == 0:
        return conj
    B = random_invertible(conj.dim, F, rng)
    mixed = []
    for k in range(conj.dim):
        acc = Matrix.zeros(L.n, L.n, F)
        for t in range(conj.dim):
            acc = acc + conj.basis[t].scale(B[k, t])
        mixed.append(acc)
    return MatrixLieAlgebra.span(mixed, L.n, F)


def planted_abelian_pair(n: int, d: int, F: FieldSpec, rng: random.Random):
    W = random_weight_matrix(n, d, F, rng)
    D = diagonal_algebra(W)
    return scramble(D, rng), scramble(D, rng), W


def perturbed_abelian_pair(n: int, d: int, F: FieldSpec, rng: random.Random):
    """Like :func:`planted_abelian_pair` but one weight entry of the second side is changed.

    Returns ``(L1, L2, W1, W2)``; the caller decides equivalence of ``W1``/``W2``
    independently, since a perturbation can occasionally land on an equivalent code.
    """
    W = random_weight_matrix(n, d, F, rng)
    while True:
        k, i = rng.randrange(d), rng.randrange(n)
        delta = random_scalar(F, rng, 1, 3)
        if not delta:
            continue
        rows = [list(r) for r in W.data]
        rows[k][i] = rows[k][i] + delta
        W2 = Matrix.from_rows(rows, F, cols=n)
        if rank(W2) == d:
            break
    return scramble(diagonal_algebra(W), rng), scramble(diagonal_algebra(W2), rng), W, W2


# -- graphs and codes -------------------------------------------------------------------

def random_graph(n: int, rng: random.Random, p: float = 0.5) -> ColoredGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return ColoredGraph.build(n, edges)


def relabel_graph(G: ColoredGraph, perm: Sequence[int]) -> ColoredGraph:
    """The graph with vertex ``v`` renamed ``perm[v]``."""
    colors = [None] * G.n
    for v in range(G.n):
        colors[perm[v]] = G.vertex_colors[v]
    return ColoredGraph(G.n, G.directed, tuple(colors), tuple((perm[u], perm[v], c) for u, v, c in G.edges))


def random_code(n: int, d: int, F: FieldSpec, rng: random.Random) -> Code:
    return Code.from_generator(random_matrix(d, n, F, rng, -2, 2))


def planted_code_pair(n: int, d: int, F: FieldSpec, rng: random.Random) -> tuple[Code, Code]:
    C = random_code(n, d, F, rng)
    return C, C.permuted(random_permutation(n, rng))


# -- Problem A --------------------------------------------------------------------------

def random_group(kind: str, rng: random.Random, max_symbols: int = 4) -> BlockGroup:
    """A faithful action of the requested kind on at most ``max_symbols`` symbols, fixing 0 when present."""
    if kind == "trivial":
        k = rng.randint(1, max_symbols)
        return BlockGroup.trivial(range(k))
    if kind == "S2":
        npairs = rng.randint(1, max(1, max_symbols // 2))
        nfixed = rng.randint(0, max_symbols - 2 * npairs)
        fixed = list(range(nfixed))
        base = max(nfixed, 1)
        pairs = [(base + 2 * t, base + 2 * t + 1) for t in range(npairs)]
        return make_group("S2", fixed, pairs)
    if kind == "S3":
        if max_symbols < 3:
            raise ValueError("S3 needs at least 3 symbols")
        nfixed = rng.randint(0, max_symbols - 3)
        base = max(nfixed, 1)
        return make_group("S3", list(range(nfixed)), triples=[tuple(range(base, base + 3))])
    raise ValueError(kind)


def random_problem_a(r: int, blocks: Sequence[int], kinds: Sequence[str], rng: random.Random,
                     max_symbols: int = 4) -> ProblemAInstance:
    groups = tuple(random_group(k, rng, max_symbols) for k in kinds)
    cob = [b for b, k in enumerate(blocks) for _ in range(k)]
    M = tuple(tuple(rng.choice(groups[cob[j]].alphabet) for j in range(len(cob))) for _ in range(r))
    return ProblemAInstance(M, tuple(blocks), groups)


def random_block_permutation(blocks: Sequence[int], rng: random.Random) -> tuple[int, ...]:
    sigma = []
    start = 0
    for k in blocks:
        part = list(range(start, start + k))
        rng.shuffle(part)
        sigma.extend(part)
        start += k
    return tuple(sigma)


def plant_problem_a(I: ProblemAInstance, w: ProblemAWitness) -> ProblemAInstance:
    """The instance ``I2`` for which ``w`` maps ``I2`` onto ``I``."""
    r, s = I.r, I.s
    cob = I.col_block
    M2 = [[0] * s for _ in range(r)]
    for i in range(r):
        for j in range(s):
            G = I.groups[cob[j]]
            M2[w.row_perm[i]][w.col_perm[j]] = G.apply(G.inverse(w.group_elems[j]), I.M[i][j])
    colors = None
    if I.row_colors is not None:
        colors = [None] * r
        for i in range(r):
            colors[w.row_perm[i]] = I.row_colors[i]
    return ProblemAInstance(tuple(map(tuple, M2)), I.blocks, I.groups, colors, I.s)


def random_pa_witness(I: ProblemAInstance, rng: random.Random) -> ProblemAWitness:
    cob = I.col_block
    return ProblemAWitness(
        random_permutation(I.r, rng),
        random_block_permutation(I.blocks, rng),
        tuple(rng.randrange(I.groups[cob[j]].order) for j in range(I.s)),
    )


def random_kinds(nblocks: int, rng: random.Random) -> list[str]:
    return [rng.choice(("trivial", "S2", "S3")) for _ in range(nblocks)]


def random_blocks(s: int, rng: random.Random, max_block: int = 3) -> list[int]:
    blocks = []
    left = s
    while left:
        k = rng.randint(1, min(max_block, left))
        blocks.append(k)
        left -= k
    return blocks


def planted_problem_a_pair(r: int, s: int, rng: random.Random):
    blocks = random_blocks(s, rng)
    I1 = random_problem_a(r, blocks, random_kinds(len(blocks), rng), rng)
    w = random_pa_witness(I1, rng)
    return I1, plant_problem_a(I1, w), w


# -- completely reducible instances ----------------------------------------------------

def random_cr_instance(r: int, a: int, s: int, F: FieldSpec, rng: random.Random) -> CRInstance:
    W = random_matrix(r, a, F, rng, -2, 2)
    blocks = random_blocks(s, rng) if s else []
    pa = random_problem_a(r, blocks, random_kinds(len(blocks), rng), rng)
    return CRInstance(W, pa)


def planted_cr_pair(r: int, a: int, s: int, F: FieldSpec, rng: random.Random):
    I1 = random_cr_instance(r, a, s, F, rng)
    w = random_pa_witness(I1.pa, rng)
    T = random_invertible(a, F, rng) if a else Matrix.identity(0, F)
    Tinv = T.inverse()
    rows = [None] * r
    for i in range(r):
        rows[w.row_perm[i]] = (Matrix.from_rows([I1.weights.row(i)], F, cols=a) @ Tinv).row(0)
    W2 = Matrix.from_rows(rows, F, cols=a)
    return I1, CRInstance(W2, plant_problem_a(I1.pa, w))


def perturbed_cr_pair(r: int, a: int, s: int, F: FieldSpec, rng: random.Random):
    """A planted pair with one weight entry of the second instance changed."""
    if a == 0:
        raise ValueError("perturbing weights needs a > 0")
    I1, I2 = planted_cr_pair(r, a, s, F, rng)
    rows = [list(x) for x in I2.weights.data]
    i, k = rng.randrange(r), rng.randrange(a)
    while True:
        delta = random_scalar(F, rng, 1, 3)
        if delta:
            break
    rows[i][k] = rows[i][k] + delta
    return I1, CRInstance(Matrix.from_rows(rows, F, cols=a), I2.pa)

