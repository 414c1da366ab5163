"""Linear codes up to coordinate permutation.

A permutation ``pi`` acts on vectors by ``(pi . v)[i] = v[pi[i]]``; codes C1
and C2 are equivalent when ``pi . C1 == C2`` for some ``pi``.

The solver fixes the lexicographically first information set of C1 and tries
every information set of C2.  With both codes in systematic form the question
becomes whether the two ``d x (n-d)`` residual matrices agree after permuting
rows and columns; the smaller of the two sides is enumerated and the other is
matched by sorting.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Sequence

from .errors import FieldMismatch, ShapeMismatch
from .fields import FieldSpec
from .graphs import ColoredGraph, find_isomorphism
from .linalg import Matrix, rref


@dataclass(frozen=True)
class Code:
    """Row space of a generator matrix, stored as its RREF basis."""

    generator: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def from_generator(cls, G: Matrix) -> Code:
        res = rref(G)
        return cls(res.R.submatrix(rows=range(res.rank)), tuple(res.pivots))

    @property
    def field(self) -> FieldSpec:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def dim(self) -> int:
        return self.generator.rows

    def permuted(self, pi: Sequence[int]) -> Code:
        """The code ``pi . C``."""
        rows = [[r[pi[i]] for i in range(self.n)] for r in self.generator.data]
        return Code.from_generator(Matrix._raw(self.field, rows, self.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.generator == other.generator

    def __hash__(self):
        return hash(self.generator)


def apply_permutation(v: Sequence, pi: Sequence[int]) -> tuple:
    return tuple(v[pi[i]] for i in range(len(pi)))


def verify_code_witness(C1: Code, C2: Code, pi: Sequence[int]) -> bool:
    if C1.n != C2.n or C1.field != C2.field or sorted(pi) != list(range(C1.n)):
        return False
    return C1.permuted(pi) == C2


@dataclass
class CodeStats:
    information_sets: int = 0
    matchings: int = 0


def _systematic(C: Code, S: Sequence[int]) -> Matrix | None:
    """Generator with the identity on columns ``S`` (in order), or None if ``S`` is not an information set."""
    G = C.generator
    B = G.submatrix(cols=S)
    try:
        Binv = B.inverse()
    except ZeroDivisionError:
        return None
    return Binv @ G


def _match_residuals(R1, R2, d: int, m: int, stats: CodeStats):
    """Find (rho, tau) with R1[i][j] == R2[rho[i]][tau[j]], enumerating the smaller side.

    The smaller side is assigned one index at a time in lexicographic order; a
    branch is cut as soon as the partial vectors on the other side stop agreeing
    as multisets, so the first hit is the same as for plain enumeration.
    """
    if d > m:
        T1 = [[R1[i][j] for i in range(d)] for j in range(m)]
        T2 = [[R2[i][j] for i in range(d)] for j in range(m)]
        hit = _match_residuals(T1, T2, m, d, stats)
        return None if hit is None else (hit[1], hit[0])
    if Counter(tuple(sorted(map(repr, r))) for r in R1) != Counter(tuple(sorted(map(repr, r))) for r in R2):
        return None
    cols1 = [tuple(R1[i][j] for i in range(d)) for j in range(m)]
    rho: list[int] = []
    used = [False] * d

    def rec(p1: list, p2: list):
        k = len(rho)
        if k == d:
            stats.matchings += 1
            pool = defaultdict(deque)
            for jp in range(m):
                pool[tuple(R2[rho[i]][jp] for i in range(d))].append(jp)
            tau = []
            for c in cols1:
                q = pool.get(c)
                if not q:
                    return None
                tau.append(q.popleft())
            return tuple(rho), tuple(tau)
        for t in range(d):
            if used[t]:
                continue
            n1 = [a + (R1[k][j],) for j, a in enumerate(p1)]
            n2 = [a + (R2[t][j],) for j, a in enumerate(p2)]
            if Counter(n1) != Counter(n2):
                continue
            used[t] = True
            rho.append(t)
            hit = rec(n1, n2)
            rho.pop()
            used[t] = False
            if hit is not None:
                return hit
        return None

    return rec([()] * m, [()] * m)


def _information_sets(C: Code):
    """Column d-subsets of C that are information sets, in lexicographic order.

    Prefixes whose columns are already dependent are skipped together with all
    of their extensions.
    """
    F, n, d = C.field, C.n, C.dim
    cols = [[C.generator[i, j] for i in range(d)] for j in range(n)]
    chosen: list[int] = []

    def reduce(v, basis):
        v = list(v)
        for p, b in basis:
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, b)]
        return v

    def rec(start: int, basis: list):
        if len(chosen) == d:
            yield tuple(chosen)
            return
        for j in range(start, n - (d - len(chosen)) + 1):
            v = reduce(cols[j], basis)
            p = next((i for i, x in enumerate(v) if x), None)
            if p is None:
                continue
            inv = F.one / v[p]
            chosen.append(j)
            yield from rec(j + 1, basis + [(p, [x * inv for x in v])])
            chosen.pop()

    yield from rec(0, [])


def _match_residuals_graph(R1, R2, d: int, m: int):
    """Same question as :func:`_match_residuals`, answered by bipartite graph isomorphism."""
    def enc(R):
        colors = ["row"] * d + ["col"] * m
        edges = [(i, d + j, ("e", repr(R[i][j]))) for i in range(d) for j in range(m)]
        return ColoredGraph(d + m, False, tuple(colors), tuple(edges))

    f = find_isomorphism(enc(R1), enc(R2))
    if f is None:
        return None
    return tuple(f[i] for i in range(d)), tuple(f[d + j] - d for j in range(m))


def code_equivalent(C1: Code, C2: Code, stats: CodeStats | None = None,
                    via_graph: bool = False) -> tuple[int, ...] | None:
    """First permutation ``pi`` (information sets of C2 in lexicographic order) with ``pi . C1 == C2``."""
    stats = CodeStats() if stats is None else stats
    if C1.field != C2.field:
        raise FieldMismatch("codes live over different fields")
    if C1.n != C2.n or C1.dim != C2.dim:
        return None
    n, d = C1.n, C1.dim
    if d == 0 or d == n:
        return tuple(range(n))
    S1 = C1.pivots
    N1 = [j for j in range(n) if j not in S1]
    R1 = [[C1.generator[i, j] for j in N1] for i in range(d)]
    m = n - d
    for S2 in _information_sets(C2):
        G2 = _systematic(C2, S2)
        stats.information_sets += 1
        N2 = [j for j in range(n) if j not in S2]
        R2 = [[G2[i, j] for j in N2] for i in range(d)]
        if via_graph:
            hit = _match_residuals_graph(R1, R2, d, m)
        else:
            hit = _match_residuals(R1, R2, d, m, stats)
        if hit is None:
            continue
        rho, tau = hit
        pi = [0] * n
        for i in range(d):
            pi[S2[rho[i]]] = S1[i]
        for j in range(m):
            pi[N2[tau[j]]] = N1[j]
        pi = tuple(pi)
        if verify_code_witness(C1, C2, pi):
            return pi
        raise AssertionError("internal error: code witness failed verification")
    return None


def brute_force_code_equivalent(C1: Code, C2: Code) -> tuple[int, ...] | None:
    """Reference oracle: try all ``n!`` permutations."""
    if C1.n != C2.n or C1.dim != C2.dim:
        return None
    rows2 = C2.generator.data
    piv = C2.pivots

    def inside(v) -> bool:
        # C2 is in RREF, so v lies in C2 iff v equals its expansion on the pivot coordinates
        return all(
            v[c] == sum((v[p] * rows2[k][c] for k, p in enumerate(piv)), C2.field.zero)
            for c in range(C2.n)
        )

    for pi in permutations(range(C1.n)):
        # equal dimensions: containment is equality
        if all(inside(apply_permutation(r, pi)) for r in C1.generator.data):
            return pi
    return None


def hamming_weight(v: Sequence) -> int:
    return sum(1 for x in v if x)


def gi_to_code(G: ColoredGraph, field: FieldSpec) -> Matrix:
    """Generator ``[I_m | I_m | I_m | D]`` with D the edge-vertex incidence matrix.

    Rows follow the lexicographic edge order; the last ``|V|`` columns follow
    the vertex order.
    """
    if G.directed:
        raise ShapeMismatch("the code reduction needs an undirected graph")
    edges = sorted({(u, v) for u, v, _ in G.edges})
    m, nv = len(edges), G.n
    rows = []
    for e, (u, v) in enumerate(edges):
        ident = [1 if k == e else 0 for k in range(m)]
        rows.append(ident * 3 + [1 if x in (u, v) else 0 for x in range(nv)])
    return Matrix.from_rows(rows, field, cols=3 * m + nv)


def nondegenerate_combination_weights(M: Matrix, k: int):
    """Yield Hamming weights of every combination of ``k`` rows with all coefficients nonzero.

    Only defined for prime fields (the coefficient set is enumerated exhaustively).
    """
    F = M.field
    nonzero = [x for x in F.elements() if x]
    for rows in combinations(range(M.rows), k):
        for coeffs in product(nonzero, repeat=k):
            v = [F.zero] * M.cols
            for c, i in zip(coeffs, rows):
                for j, x in enumerate(M.data[i]):
                    if x:
                        v[j] = v[j] + c * x
            yield hamming_weight(v)
