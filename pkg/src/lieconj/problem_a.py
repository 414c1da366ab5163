"""Problem A: integer matrices up to row permutation, block-preserving column
permutation, and per-column relabelling of entries by a small group.

Two instances are equivalent when there are ``pi``, ``sigma`` and ``g_j`` with

    M1[i][j] == g_j(M2[pi[i]][sigma[j]])

for every cell.  This module holds the data model, two exhaustive solvers,
and the reductions to and from colored graph isomorphism.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Hashable, Sequence

from .errors import BudgetExceeded, InvalidInstance, UnsupportedGroup
from .graphs import ColoredGraph, SearchStats, find_isomorphism

DEFAULT_BUDGET = 2_000_000

GROUP_ORDER = {"trivial": 1, "S2": 2, "S3": 6}


def _compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Index-level composition ``(a o b)[i] = a[b[i]]``."""
    return tuple(a[i] for i in b)


# -- groups --------------------------------------------------------------------

@dataclass(frozen=True)
class BlockGroup:
    """A group of order 1, 2 or 6 acting faithfully on a finite alphabet.

    ``elements[k][t]`` is the image of ``alphabet[t]`` under element ``k``.
    Elements are kept sorted, so element 0 is the identity.
    """

    kind: str
    alphabet: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.kind not in GROUP_ORDER:
            raise UnsupportedGroup(f"group kind {self.kind!r} is not one of trivial/S2/S3")
        alpha = tuple(sorted(set(int(a) for a in self.alphabet)))
        if len(alpha) != len(self.alphabet):
            raise InvalidInstance("alphabet has repeated symbols")
        if any(a < 0 for a in alpha):
            raise InvalidInstance("alphabet symbols must be non-negative")
        # re-express tables against the sorted alphabet
        elems = set()
        for e in self.elements:
            if len(e) != len(alpha):
                raise InvalidInstance("group element table has the wrong length")
            img = {self.alphabet[t]: int(e[t]) for t in range(len(e))}
            if sorted(img.values()) != list(alpha):
                raise InvalidInstance("group element is not a permutation of the alphabet")
            elems.add(tuple(img[a] for a in alpha))
        elems = tuple(sorted(elems))
        object.__setattr__(self, "alphabet", alpha)
        object.__setattr__(self, "elements", elems)
        if len(elems) != GROUP_ORDER[self.kind]:
            raise InvalidInstance(
                f"{self.kind} needs {GROUP_ORDER[self.kind]} distinct elements, got {len(elems)}"
            )
        idx = {a: t for t, a in enumerate(alpha)}
        as_idx = [tuple(idx[x] for x in e) for e in elems]
        ident = tuple(range(len(alpha)))
        if ident not in as_idx:
            raise InvalidInstance("group has no identity element")
        table = set(as_idx)
        for a in as_idx:
            for b in as_idx:
                if _compose(a, b) not in table:
                    raise InvalidInstance("group elements are not closed under composition")
        if self.kind == "S3" and all(_compose(a, b) == _compose(b, a) for a in as_idx for b in as_idx):
            raise InvalidInstance("an order-6 abelian group is cyclic, not S3")
        if 0 in idx:
            z = idx[0]
            if any(a[z] != z for a in as_idx):
                raise InvalidInstance("symbol 0 (the trivial representation) must be fixed")

    @classmethod
    def trivial(cls, alphabet: Sequence[int]) -> BlockGroup:
        alpha = tuple(sorted(alphabet))
        return cls("trivial", alpha, (alpha,))

    @classmethod
    def generated(cls, kind: str, alphabet: Sequence[int], generators: Sequence[dict]) -> BlockGroup:
        """Close a list of generator maps ``{symbol: image}`` under composition."""
        alpha = tuple(sorted(alphabet))
        idx = {a: t for t, a in enumerate(alpha)}
        gens = [tuple(idx[g.get(a, a)] for a in alpha) for g in generators]
        seen = {tuple(range(len(alpha)))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return cls(kind, alpha, tuple(tuple(alpha[i] for i in e) for e in seen))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def apply(self, k: int, value: int) -> int:
        return self.elements[k][self._index[value]]

    @property
    def _index(self) -> dict[int, int]:
        return _alphabet_index(self.alphabet)

    def maps(self) -> list[dict[int, int]]:
        return [dict(zip(self.alphabet, e)) for e in self.elements]

    def inverse(self, k: int) -> int:
        m = self.maps()[k]
        inv = {v: u for u, v in m.items()}
        return self.elements.index(tuple(inv[a] for a in self.alphabet))

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits sorted by (size, smallest symbol); each orbit lists its symbols ascending."""
        seen = set()
        out = []
        ms = self.maps()
        for a in self.alphabet:
            if a in seen:
                continue
            orb = tuple(sorted({m[a] for m in ms}))
            seen.update(orb)
            out.append(orb)
        out.sort(key=lambda o: (len(o), o[0]))
        return out


@lru_cache(maxsize=None)
def _alphabet_index(alphabet: tuple[int, ...]) -> dict[int, int]:
    return {a: t for t, a in enumerate(alphabet)}


def make_group(kind: str, fixed: Sequence[int] = (), pairs: Sequence[Sequence[int]] = (),
               triples: Sequence[Sequence[int]] = (), regular: Sequence[Sequence[int]] = ()) -> BlockGroup:
    """Build a block group from orbit data.

    ``pairs`` are 2-point orbits (swapped by the nontrivial or odd elements),
    ``triples`` carry the natural S3 action, ``regular`` 6-point orbits carry
    the left-regular action with points listed in the order of ``S3_ELEMENTS``.
    """
    alphabet = sorted([*fixed, *(x for o in pairs for x in o), *(x for o in triples for x in o),
                       *(x for o in regular for x in o)])
    if kind == "trivial":
        if pairs or triples or regular:
            raise InvalidInstance("the trivial group has only fixed points")
        return BlockGroup.trivial(alphabet)
    if kind == "S2":
        if triples or regular:
            raise InvalidInstance("S2 orbits have size at most 2")
        swap = {a: a for a in alphabet}
        for a, b in pairs:
            swap[a], swap[b] = b, a
        return BlockGroup("S2", tuple(alphabet), (tuple(alphabet), tuple(swap[a] for a in alphabet)))
    if kind == "S3":
        elems = []
        for s in S3_ELEMENTS:
            m = {a: a for a in alphabet}
            for a, b in pairs:
                if _sign(s) < 0:
                    m[a], m[b] = b, a
            for orb in triples:
                for t in range(3):
                    m[orb[t]] = orb[s[t]]
            for orb in regular:
                for t, x in enumerate(S3_ELEMENTS):
                    m[orb[t]] = orb[S3_ELEMENTS.index(_compose(s, x))]
            elems.append(tuple(m[a] for a in alphabet))
        return BlockGroup("S3", tuple(alphabet), tuple(elems))
    raise UnsupportedGroup(kind)


S3_ELEMENTS: tuple[tuple[int, ...], ...] = tuple(permutations(range(3)))


def _sign(p: Sequence[int]) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


# -- instances and witnesses -----------------------------------------------------

@dataclass(frozen=True)
class ProblemAInstance:
    M: tuple[tuple[int, ...], ...]
    blocks: tuple[int, ...]
    groups: tuple[BlockGroup, ...]
    row_colors: tuple[Hashable, ...] | None = None
    ncols: int | None = None

    def __post_init__(self):
        M = tuple(tuple(int(x) for x in row) for row in self.M)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "blocks", tuple(int(k) for k in self.blocks))
        object.__setattr__(self, "groups", tuple(self.groups))
        s = sum(self.blocks)
        if self.ncols is None:
            object.__setattr__(self, "ncols", s)
        if self.ncols != s:
            raise InvalidInstance("block sizes must add up to the column count")
        if any(k <= 0 for k in self.blocks):
            raise InvalidInstance("blocks must be nonempty")
        if len(self.groups) != len(self.blocks):
            raise InvalidInstance("one group per block is required")
        if any(len(row) != s for row in M):
            raise InvalidInstance(f"every row must have {s} entries")
        if self.row_colors is not None:
            object.__setattr__(self, "row_colors", tuple(self.row_colors))
            if len(self.row_colors) != len(M):
                raise InvalidInstance("one row color per row is required")
        cob = self.col_block
        for row in M:
            for j, x in enumerate(row):
                if x not in self.groups[cob[j]]._index:
                    raise InvalidInstance(f"entry {x} in column {j} is outside its block alphabet")

    @property
    def r(self) -> int:
        return len(self.M)

    @property
    def s(self) -> int:
        return self.ncols

    @property
    def col_block(self) -> tuple[int, ...]:
        return tuple(b for b, k in enumerate(self.blocks) for _ in range(k))

    def block_ranges(self) -> list[range]:
        out, start = [], 0
        for k in self.blocks:
            out.append(range(start, start + k))
            start += k
        return out

    def row_color(self, i: int):
        return None if self.row_colors is None else self.row_colors[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.M)

    def with_row_colors(self, colors: Sequence[Hashable] | None) -> ProblemAInstance:
        return ProblemAInstance(self.M, self.blocks, self.groups, None if colors is None else tuple(colors), self.ncols)


@dataclass(frozen=True)
class ProblemAWitness:
    """``M1[i][j] == g_j(M2[row_perm[i]][col_perm[j]])``; ``group_elems[j]`` indexes the block group."""

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    group_elems: tuple[int, ...]


@dataclass
class SolveStats:
    candidates: int = 0
    graph_nodes: int = 0


def compatible(I1: ProblemAInstance, I2: ProblemAInstance) -> bool:
    """Same shape, blocks, groups and row-color multiset."""
    if (I1.r, I1.s, I1.blocks, I1.groups) != (I2.r, I2.s, I2.blocks, I2.groups):
        return False
    if (I1.row_colors is None) != (I2.row_colors is None):
        return False
    if I1.row_colors is not None and Counter(I1.row_colors) != Counter(I2.row_colors):
        return False
    return True


def verify_witness(I1: ProblemAInstance, I2: ProblemAInstance, w: ProblemAWitness) -> bool:
    if not compatible(I1, I2):
        return False
    r, s = I1.r, I1.s
    if sorted(w.row_perm) != list(range(r)) or sorted(w.col_perm) != list(range(s)):
        return False
    if len(w.group_elems) != s:
        return False
    cob = I1.col_block
    if any(cob[j] != cob[w.col_perm[j]] for j in range(s)):
        return False
    if I1.row_colors is not None:
        if any(I1.row_colors[i] != I2.row_colors[w.row_perm[i]] for i in range(r)):
            return False
    for j in range(s):
        G = I1.groups[cob[j]]
        if not 0 <= w.group_elems[j] < G.order:
            return False
        for i in range(r):
            if I1.M[i][j] != G.apply(w.group_elems[j], I2.M[w.row_perm[i]][w.col_perm[j]]):
                return False
    return True


def apply_witness(I2: ProblemAInstance, w: ProblemAWitness) -> tuple[tuple[int, ...], ...]:
    """The matrix ``N[i][j] = g_j(M2[pi i][sigma j])``."""
    cob = I2.col_block
    return tuple(
        tuple(I2.groups[cob[j]].apply(w.group_elems[j], I2.M[w.row_perm[i]][w.col_perm[j]]) for j in range(I2.s))
        for i in range(I2.r)
    )


def _match_rows(keys1: Sequence, keys2: Sequence) -> tuple[int, ...] | None:
    """Row permutation pi with keys1[i] == keys2[pi[i]], smallest indices first."""
    pool = defaultdict(deque)
    for i, k in enumerate(keys2):
        pool[k].append(i)
    out = []
    for k in keys1:
        q = pool.get(k)
        if not q:
            return None
        out.append(q.popleft())
    return tuple(out)


# -- solver 1: enumerate column maps ---------------------------------------------

def solve_bruteforce(I1: ProblemAInstance, I2: ProblemAInstance, budget: int = DEFAULT_BUDGET,
                     stats: SolveStats | None = None) -> ProblemAWitness | None:
    """Enumerate ``sigma`` and the per-column group elements column by column.

    Column ``j`` is assigned a source column ``sigma[j]`` from its block and a
    group element, ascending.  A branch is cut as soon as the multiset of
    partial rows (with row colors) disagrees; the surviving leaves give ``pi``
    by stable row matching.
    """
    stats = SolveStats() if stats is None else stats
    if not compatible(I1, I2):
        return None
    r, s = I1.r, I1.s
    cob = I1.col_block
    ranges = I1.block_ranges()
    col1 = [I1.column(j) for j in range(s)]
    col2 = [I2.column(j) for j in range(s)]
    c1 = [I1.row_color(i) for i in range(r)]
    c2 = [I2.row_color(i) for i in range(r)]

    # per (j, source column) the group elements that match column value multisets
    options: list[list[tuple[int, int]]] = []
    for j in range(s):
        G = I1.groups[cob[j]]
        want = Counter(col1[j])
        opts = []
        for src in ranges[cob[j]]:
            for k in range(G.order):
                if Counter(G.apply(k, x) for x in col2[src]) == want:
                    opts.append((src, k))
        options.append(opts)

    sigma = [0] * s
    gel = [0] * s
    used = set()
    partial1 = [(c,) for c in c1]
    partial2 = [(c,) for c in c2]

    def rec(j: int, p1: list, p2: list) -> tuple[int, ...] | None:
        if j == s:
            return _match_rows(p1, p2)
        G = I1.groups[cob[j]]
        for src, k in options[j]:
            if src in used:
                continue
            stats.candidates += 1
            if stats.candidates > budget:
                raise BudgetExceeded(f"Problem A brute force exceeded {budget} candidates")
            n1 = [p + (col1[j][i],) for i, p in enumerate(p1)]
            n2 = [p + (G.apply(k, col2[src][i]),) for i, p in enumerate(p2)]
            if Counter(n1) != Counter(n2):
                continue
            used.add(src)
            sigma[j], gel[j] = src, k
            pi = rec(j + 1, n1, n2)
            used.discard(src)
            if pi is not None:
                return pi
        return None

    pi = rec(0, partial1, partial2)
    if pi is None:
        return None
    w = ProblemAWitness(tuple(pi), tuple(sigma), tuple(gel))
    if not verify_witness(I1, I2, w):
        raise AssertionError("internal error: brute-force witness failed verification")
    return w


# -- solver 2: enumerate row permutations ------------------------------------------

def _row_perms(c1: Sequence, c2: Sequence):
    """Row permutations pi (lexicographic) with c1[i] == c2[pi[i]]."""
    r = len(c1)
    perm = [0] * r
    used = [False] * r

    def rec(i):
        if i == r:
            yield tuple(perm)
            return
        for t in range(r):
            if not used[t] and c2[t] == c1[i]:
                used[t] = True
                perm[i] = t
                yield from rec(i + 1)
                used[t] = False

    yield from rec(0)


def solve_boundedrows(I1: ProblemAInstance, I2: ProblemAInstance, budget: int = DEFAULT_BUDGET,
                      stats: SolveStats | None = None) -> ProblemAWitness | None:
    """Enumerate group elements on nontrivial columns, then all row permutations.

    For each combination the per-block multisets of column vectors are compared
    and ``sigma`` is read off the sorted matching.
    """
    stats = SolveStats() if stats is None else stats
    if not compatible(I1, I2):
        return None
    r, s = I1.r, I1.s
    cob = I1.col_block
    ranges = I1.block_ranges()
    col1 = [I1.column(j) for j in range(s)]
    col2 = [I2.column(j) for j in range(s)]
    c1 = [I1.row_color(i) for i in range(r)]
    c2 = [I2.row_color(i) for i in range(r)]
    block_value_sets = [Counter(tuple(sorted(col1[j])) for j in rg) for rg in ranges]

    choices = []
    for j in range(s):
        G = I2.groups[cob[j]]
        if G.is_trivial:
            choices.append([0])
            continue
        ok = [k for k in range(G.order)
              if tuple(sorted(G.apply(k, x) for x in col2[j])) in block_value_sets[cob[j]]]
        choices.append(ok)

    for h in product(*choices):
        N = [[I2.groups[cob[j]].apply(h[j], col2[j][i]) for j in range(s)] for i in range(r)]
        # cheap filter: per-block multiset of column value multisets
        if any(Counter(tuple(sorted(N[i][j] for i in range(r))) for j in rg) != block_value_sets[b]
               for b, rg in enumerate(ranges)):
            stats.candidates += 1
            if stats.candidates > budget:
                raise BudgetExceeded(f"Problem A bounded-rows search exceeded {budget} candidates")
            continue
        for pi in _row_perms(c1, c2):
            stats.candidates += 1
            if stats.candidates > budget:
                raise BudgetExceeded(f"Problem A bounded-rows search exceeded {budget} candidates")
            sigma = []
            ok = True
            for rg in ranges:
                pool = defaultdict(deque)
                for jp in rg:
                    pool[tuple(N[pi[i]][jp] for i in range(r))].append(jp)
                for j in rg:
                    q = pool.get(col1[j])
                    if not q:
                        ok = False
                        break
                    sigma.append(q.popleft())
                if not ok:
                    break
            if not ok:
                continue
            w = ProblemAWitness(pi, tuple(sigma), tuple(h[sigma[j]] for j in range(s)))
            if not verify_witness(I1, I2, w):
                raise AssertionError("internal error: bounded-rows witness failed verification")
            return w
    return None


def bruteforce_cost(I: ProblemAInstance) -> int:
    """Nominal size of the column-side search space."""
    return prod(factorial(k) * I.groups[b].order ** k for b, k in enumerate(I.blocks))


def boundedrows_cost(I: ProblemAInstance) -> int:
    cob = I.col_block
    return factorial(I.r) * prod(I.groups[cob[j]].order for j in range(I.s))


def solve(I1: ProblemAInstance, I2: ProblemAInstance, budget: int = DEFAULT_BUDGET,
          stats: SolveStats | None = None) -> ProblemAWitness | None:
    """Pick the solver with the smaller nominal search space."""
    if boundedrows_cost(I1) < bruteforce_cost(I1):
        return solve_boundedrows(I1, I2, budget, stats)
    return solve_bruteforce(I1, I2, budget, stats)


# -- GI -> Problem A --------------------------------------------------------------

def gi_to_problem_a(G: ColoredGraph) -> ProblemAInstance:
    """Edge-vertex incidence matrix: one row per edge (lexicographic), one column per vertex."""
    if G.directed:
        raise InvalidInstance("the incidence reduction needs an undirected graph")
    if len(set(G.vertex_colors)) > 1 or len({c for _, _, c in G.edges}) > 1:
        raise InvalidInstance("the incidence reduction needs an uncolored graph")
    edges = sorted({(u, v) for u, v, _ in G.edges})
    M = tuple(tuple(1 if x in (u, v) else 0 for x in range(G.n)) for u, v in edges)
    if G.n == 0:
        return ProblemAInstance(M, (), ())
    return ProblemAInstance(M, (G.n,), (BlockGroup.trivial((0, 1)),))


# -- Problem A -> GI (palette gadgets) --------------------------------------------

GADGET_VERTICES = ("1", "2", "3", "A12", "A23", "A31", "B21", "B32", "B13", "A", "B")
GADGET_UNDIRECTED = (
    ("A12", "A23"), ("A23", "A31"), ("A31", "A12"),
    ("A", "A12"), ("A", "A23"), ("A", "A31"),
    ("B21", "B32"), ("B32", "B13"), ("B13", "B21"),
    ("B", "B21"), ("B", "B32"), ("B", "B13"),
)
GADGET_DIRECTED = (
    ("1", "A12"), ("A12", "2"), ("2", "A23"), ("A23", "3"), ("3", "A31"), ("A31", "1"),
    ("1", "B13"), ("B13", "3"), ("3", "B32"), ("B32", "2"), ("2", "B21"), ("B21", "1"),
)
UNDIRECTED_EDGE = "u"
DIRECTED_EDGE = "d"


def s3_color_gadget(vertex_colors: Sequence[Hashable] | None = None) -> ColoredGraph:
    """The 11-vertex S3 color gadget as a directed graph.

    Undirected links are stored as arc pairs with edge color ``"u"``; the
    oriented arcs carry edge color ``"d"``.  Vertices follow ``GADGET_VERTICES``.
    """
    ix = {v: i for i, v in enumerate(GADGET_VERTICES)}
    edges = []
    for a, b in GADGET_UNDIRECTED:
        edges.append((ix[a], ix[b], UNDIRECTED_EDGE))
        edges.append((ix[b], ix[a], UNDIRECTED_EDGE))
    for a, b in GADGET_DIRECTED:
        edges.append((ix[a], ix[b], DIRECTED_EDGE))
    vc = tuple(vertex_colors) if vertex_colors is not None else (0,) * len(GADGET_VERTICES)
    return ColoredGraph(len(GADGET_VERTICES), True, vc, tuple(edges))


@lru_cache(maxsize=1)
def gadget_action() -> dict[tuple[int, ...], tuple[int, ...]]:
    """Gadget automorphisms keyed by their permutation of vertices 1, 2, 3 (as indices 0..2)."""
    from .graphs import automorphisms

    out = {}
    for a in automorphisms(s3_color_gadget()):
        s = tuple(a[t] for t in range(3))
        out[s] = tuple(a)
    if sorted(out) != sorted(S3_ELEMENTS):
        raise AssertionError("color gadget automorphisms do not restrict to S3 on {1,2,3}")
    return out


def _gadget_role(v: str) -> str:
    if v in ("1", "2", "3"):
        return "num"
    if v in ("A", "B"):
        return "sign"
    return "reg"


@lru_cache(maxsize=None)
def _s3_iso(group: BlockGroup) -> tuple[tuple[int, ...], ...]:
    """First isomorphism (in lex order) from the group's sorted elements onto S3_ELEMENTS."""
    idx = group._index
    elems = [tuple(idx[x] for x in e) for e in group.elements]
    pos = {e: k for k, e in enumerate(elems)}
    for targets in permutations(S3_ELEMENTS):
        if all(targets[pos[_compose(a, b)]] == _compose(targets[pos[a]], targets[pos[b]])
               for a in elems for b in elems):
            return tuple(targets)
    raise UnsupportedGroup("order-6 group is not isomorphic to S3")


@dataclass
class _Palette:
    """Layout of one column's palette, relative to a base vertex offset."""

    size: int
    edges: list
    colors: list
    marks: list[int]
    value_vertex: dict[int, int]


@lru_cache(maxsize=None)
def _palette_layout(group: BlockGroup) -> _Palette:
    colors: list = []
    edges: list = []
    marks: list[int] = []
    value_vertex: dict[int, int] = {}

    def new(color) -> int:
        colors.append(color)
        return len(colors) - 1

    def link(a, b):
        edges.append((a, b, UNDIRECTED_EDGE))
        edges.append((b, a, UNDIRECTED_EDGE))

    orbits = group.orbits()
    fixed = [o[0] for o in orbits if len(o) == 1]
    if fixed:
        m = new(("mark", "fixed"))
        marks.append(m)
        prev = m
        for a in fixed:
            v = new(("pal", "line"))
            link(prev, v)
            value_vertex[a] = v
            prev = v
    if group.kind == "S2":
        pairs = [o for o in orbits if len(o) == 2]
        if pairs:
            m = new(("mark", "S2"))
            marks.append(m)
            prevL = prevR = m
            swap = group.maps()[1]
            for o in pairs:
                L = new(("pal", "pair"))
                R = new(("pal", "pair"))
                link(prevL, L)
                link(prevR, R)
                value_vertex[o[0]] = L
                value_vertex[swap[o[0]]] = R
                prevL, prevR = L, R
    elif group.kind == "S3":
        by_size = {t: [o for o in orbits if len(o) == t] for t in (2, 3, 6)}
        if any(len(o) not in (1, 2, 3, 6) for o in orbits):
            raise UnsupportedGroup("S3 orbit of unexpected size")
        copies = max(len(v) for v in by_size.values())
        if copies:
            action = gadget_action()
            psi = _s3_iso(group)
            ms = group.maps()
            m = new(("mark", "S3"))
            marks.append(m)
            gix = {v: i for i, v in enumerate(GADGET_VERTICES)}
            prev_copy = None
            for c in range(copies):
                base = [new(("pal", "gadget", _gadget_role(v))) for v in GADGET_VERTICES]
                for a, b in GADGET_UNDIRECTED:
                    link(base[gix[a]], base[gix[b]])
                for a, b in GADGET_DIRECTED:
                    edges.append((base[gix[a]], base[gix[b]], DIRECTED_EDGE))
                if prev_copy is None:
                    for v in base:
                        link(m, v)
                else:
                    for t in range(3):
                        link(prev_copy[t], base[t])
                prev_copy = base
                for size, starts in ((2, ("A",)), (3, ("1", "2", "3")), (6, ("A12",))):
                    if c >= len(by_size[size]):
                        continue
                    orb = by_size[size][c]
                    x0 = orb[0]
                    placed = None
                    for start in starts:
                        trial = {}
                        ok = True
                        for k, mp in enumerate(ms):
                            vert = action[psi[k]][gix[start]]
                            y = mp[x0]
                            if trial.setdefault(y, vert) != vert:
                                ok = False
                                break
                        if ok:
                            placed = trial
                            break
                    if placed is None:
                        raise UnsupportedGroup("orbit action is not compatible with the color gadget")
                    for y, vert in placed.items():
                        value_vertex[y] = base[vert]
    return _Palette(len(colors), edges, colors, marks, value_vertex)


@dataclass(frozen=True)
class GadgetGraph:
    """Graph encoding of a Problem A instance plus the vertex maps the decoder needs."""

    graph: ColoredGraph
    row_vertex: tuple[int, ...]
    col_vertex: tuple[int, ...]
    value_vertex: tuple[dict, ...] = field(repr=False)


def problem_a_to_gi(I: ProblemAInstance) -> GadgetGraph:
    """Row-vertices, column-vertices, one vertex per cell, and a palette per column.

    The cell vertex for ``(i, j)`` is joined to row ``i``, column ``j``, and the
    palette vertex that encodes the value ``M[i][j]`` in column ``j``'s palette.
    """
    colors: list = []
    edges: list = []

    def link(a, b):
        edges.append((a, b, UNDIRECTED_EDGE))
        edges.append((b, a, UNDIRECTED_EDGE))

    rows = []
    for i in range(I.r):
        colors.append(("row",) if I.row_colors is None else ("row", I.row_colors[i]))
        rows.append(len(colors) - 1)
    cols = []
    cob = I.col_block
    for j in range(I.s):
        colors.append(("col", cob[j]))
        cols.append(len(colors) - 1)
    values = []
    for j in range(I.s):
        pal = _palette_layout(I.groups[cob[j]])
        off = len(colors)
        colors.extend(pal.colors)
        edges.extend((a + off, b + off, c) for a, b, c in pal.edges)
        for m in pal.marks:
            link(cols[j], m + off)
        values.append({a: v + off for a, v in pal.value_vertex.items()})
    for i in range(I.r):
        for j in range(I.s):
            colors.append(("cell",))
            e = len(colors) - 1
            link(e, rows[i])
            link(e, cols[j])
            link(e, values[j][I.M[i][j]])
    G = ColoredGraph(len(colors), True, tuple(colors), tuple(edges))
    return GadgetGraph(G, tuple(rows), tuple(cols), tuple(values))


def decode_isomorphism(I1: ProblemAInstance, I2: ProblemAInstance, g1: GadgetGraph, g2: GadgetGraph,
                       mapping: Sequence[int]) -> ProblemAWitness:
    """Turn a gadget-graph isomorphism ``g1 -> g2`` into a Problem A witness."""
    row_of = {v: i for i, v in enumerate(g2.row_vertex)}
    col_of = {v: j for j, v in enumerate(g2.col_vertex)}
    pi = tuple(row_of[mapping[v]] for v in g1.row_vertex)
    sigma = tuple(col_of[mapping[v]] for v in g1.col_vertex)
    cob = I1.col_block
    gel = []
    for j in range(I1.s):
        G = I1.groups[cob[j]]
        vv1, vv2 = g1.value_vertex[j], g2.value_vertex[sigma[j]]
        for k, mp in enumerate(G.maps()):
            if all(mapping[vv1[a]] == vv2[mp[a]] for a in G.alphabet):
                gel.append(G.inverse(k))
                break
        else:
            raise AssertionError("palette map does not match any group element")
    return ProblemAWitness(pi, sigma, tuple(gel))


def solve_via_gi(I1: ProblemAInstance, I2: ProblemAInstance,
                 stats: SolveStats | None = None) -> ProblemAWitness | None:
    """Decide equivalence through the palette reduction and the graph solver."""
    stats = SolveStats() if stats is None else stats
    if not compatible(I1, I2):
        return None
    g1, g2 = problem_a_to_gi(I1), problem_a_to_gi(I2)
    gs = SearchStats()
    mapping = find_isomorphism(g1.graph, g2.graph, gs)
    stats.graph_nodes += gs.nodes
    if mapping is None:
        return None
    w = decode_isomorphism(I1, I2, g1, g2, mapping)
    if not verify_witness(I1, I2, w):
        raise AssertionError("internal error: decoded witness failed verification")
    return w
