"""Colored graph isomorphism by color refinement and individualization.

The solver refines the colorings of both graphs *jointly*, so a color id means
the same thing on either side.  When refinement stalls, the smallest
non-singleton cell is split by individualizing its lowest vertex in the first
graph against every candidate (ascending) in the second.  Every mapping that
reaches a discrete coloring is re-verified edge by edge before it is reported.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Iterator, Sequence

from .errors import InvalidInstance, TooLarge

DEFAULT_AUTOMORPHISM_BOUND = 64


@dataclass(frozen=True)
class ColoredGraph:
    """Vertex- and edge-colored graph on vertices ``0..n-1``.

    Undirected edges are stored with ``u <= v``.  Parallel edges are allowed
    only when their colors differ.
    """

    n: int
    directed: bool
    vertex_colors: tuple[Hashable, ...]
    edges: tuple[tuple[int, int, Hashable], ...]
    _out: tuple[tuple[tuple[Hashable, int], ...], ...] = field(init=False, repr=False, compare=False)
    _in: tuple[tuple[tuple[Hashable, int], ...], ...] = field(init=False, repr=False, compare=False)
    _emap: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.vertex_colors) != self.n:
            raise InvalidInstance("vertex_colors must have one entry per vertex")
        norm = set()
        for u, v, c in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInstance(f"edge ({u},{v}) out of range")
            if u == v:
                raise InvalidInstance("self-loops are not allowed")
            if not self.directed and u > v:
                u, v = v, u
            norm.add((u, v, c))
        edges = tuple(sorted(norm, key=lambda e: (e[0], e[1], repr(e[2]))))
        object.__setattr__(self, "edges", edges)
        out = [[] for _ in range(self.n)]
        inn = [[] for _ in range(self.n)]
        emap = defaultdict(set)
        for u, v, c in edges:
            out[u].append((c, v))
            emap[(u, v)].add(c)
            if self.directed:
                inn[v].append((c, u))
            else:
                out[v].append((c, u))
                emap[(v, u)].add(c)
        object.__setattr__(self, "_out", tuple(tuple(x) for x in out))
        object.__setattr__(self, "_in", tuple(tuple(x) for x in inn))
        object.__setattr__(self, "_emap", {k: frozenset(s) for k, s in emap.items()})

    @classmethod
    def build(cls, n: int, edges, vertex_colors=None, directed: bool = False) -> ColoredGraph:
        """Convenience constructor; edges may be ``(u, v)`` pairs (color 0) or triples."""
        es = []
        for e in edges:
            es.append((e[0], e[1], e[2] if len(e) > 2 else 0))
        vc = tuple(vertex_colors) if vertex_colors is not None else (0,) * n
        return cls(n, directed, vc, tuple(es))

    def edge_colors(self, u: int, v: int) -> frozenset:
        return self._emap.get((u, v), frozenset())

    def out_neighbors(self, u: int):
        return self._out[u]

    def in_neighbors(self, u: int):
        return self._in[u]


def _color_key(c):
    return (type(c).__name__, repr(c))


def _initial_joint(graphs: Sequence[ColoredGraph]) -> list[list[int]]:
    uniq = set()
    for G in graphs:
        uniq.update(G.vertex_colors)
    try:
        order = sorted(uniq)
    except TypeError:
        order = sorted(uniq, key=_color_key)
    ids = {c: i for i, c in enumerate(order)}
    return [[ids[c] for c in G.vertex_colors] for G in graphs]


def _edge_ids(graphs: Sequence[ColoredGraph]) -> dict:
    uniq = set()
    for G in graphs:
        uniq.update(c for _, _, c in G.edges)
    try:
        order = sorted(uniq)
    except TypeError:
        order = sorted(uniq, key=_color_key)
    return {c: i for i, c in enumerate(order)}


def refine_joint(graphs: Sequence[ColoredGraph], colorings: Sequence[Sequence[int]], eids: dict | None = None) -> list[list[int]]:
    """Coarsest common stable refinement of several colorings.

    Each round recolors a vertex by its old color together with the sorted
    multiset of ``(edge color, neighbor color)`` over out-neighbors, and over
    in-neighbors for directed graphs.  New ids are ranks of sorted signatures.
    """
    eids = _edge_ids(graphs) if eids is None else eids
    cols = [list(c) for c in colorings]
    ncls = len({x for c in cols for x in c})
    while True:
        sigs = []
        for G, col in zip(graphs, cols):
            gs = []
            for v in range(G.n):
                out = tuple(sorted((eids[c], col[w]) for c, w in G._out[v]))
                if G.directed:
                    inn = tuple(sorted((eids[c], col[w]) for c, w in G._in[v]))
                    gs.append((col[v], out, inn))
                else:
                    gs.append((col[v], out))
            sigs.append(gs)
        ids = {s: i for i, s in enumerate(sorted({s for gs in sigs for s in gs}))}
        cols = [[ids[s] for s in gs] for gs in sigs]
        new = len(ids)
        if new == ncls:
            return cols
        ncls = new


def refine(G: ColoredGraph) -> list[int]:
    """Stable coloring of a single graph."""
    return refine_joint([G], _initial_joint([G]))[0]


def is_isomorphism(G1: ColoredGraph, G2: ColoredGraph, mapping: Sequence[int]) -> bool:
    """Check that ``mapping`` sends G1 onto G2 preserving all colors and directions."""
    if G1.n != G2.n or G1.directed != G2.directed or len(mapping) != G1.n:
        return False
    if sorted(mapping) != list(range(G1.n)):
        return False
    if any(G1.vertex_colors[v] != G2.vertex_colors[mapping[v]] for v in range(G1.n)):
        return False
    if len(G1.edges) != len(G2.edges):
        return False
    for u, v, c in G1.edges:
        if c not in G2.edge_colors(mapping[u], mapping[v]):
            return False
    return True


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0


def _search(G1, G2, c1, c2, eids, collect: bool, found: list, stats: SearchStats) -> bool:
    stats.nodes += 1
    c1, c2 = refine_joint([G1, G2], [c1, c2], eids)
    if Counter(c1) != Counter(c2):
        return False
    n = G1.n
    cells = defaultdict(list)
    for v, c in enumerate(c1):
        cells[c].append(v)
    if len(cells) == n:
        stats.leaves += 1
        pos2 = {c: w for w, c in enumerate(c2)}
        mapping = [pos2[c1[v]] for v in range(n)]
        if is_isomorphism(G1, G2, mapping):
            found.append(mapping)
            return not collect
        return False
    target = min((len(vs), c) for c, vs in cells.items() if len(vs) > 1)[1]
    v = cells[target][0]
    fresh = max(max(c1), max(c2)) + 1
    for w in (u for u in range(n) if c2[u] == target):
        d1 = list(c1)
        d2 = list(c2)
        d1[v] = fresh
        d2[w] = fresh
        if _search(G1, G2, d1, d2, eids, collect, found, stats):
            return True
    return False


def _compatible(G1: ColoredGraph, G2: ColoredGraph) -> bool:
    return (
        G1.n == G2.n
        and G1.directed == G2.directed
        and len(G1.edges) == len(G2.edges)
        and Counter(G1.vertex_colors) == Counter(G2.vertex_colors)
        and Counter(c for _, _, c in G1.edges) == Counter(c for _, _, c in G2.edges)
    )


def find_isomorphism(G1: ColoredGraph, G2: ColoredGraph, stats: SearchStats | None = None) -> list[int] | None:
    """First isomorphism ``G1 -> G2`` in enumeration order, or None.

    ``mapping[v]`` is the image in G2 of vertex ``v`` of G1.
    """
    stats = SearchStats() if stats is None else stats
    if not _compatible(G1, G2):
        return None
    if G1.n == 0:
        return []
    c1, c2 = _initial_joint([G1, G2])
    found: list = []
    _search(G1, G2, c1, c2, _edge_ids([G1, G2]), False, found, stats)
    return found[0] if found else None


def automorphisms(G: ColoredGraph, bound: int = DEFAULT_AUTOMORPHISM_BOUND,
                  stats: SearchStats | None = None) -> list[list[int]]:
    """All automorphisms of ``G``, as vertex permutations."""
    if G.n > bound:
        raise TooLarge(f"{G.n} vertices exceeds the automorphism bound {bound}")
    stats = SearchStats() if stats is None else stats
    if G.n == 0:
        return [[]]
    c, _ = _initial_joint([G, G])
    found: list = []
    _search(G, G, c, list(c), _edge_ids([G]), True, found, stats)
    return found


def brute_force_isomorphisms(G1: ColoredGraph, G2: ColoredGraph) -> Iterator[list[int]]:
    """Every isomorphism by trying all ``n!`` bijections (reference oracle for tests)."""
    if G1.n != G2.n:
        return
    for p in permutations(range(G1.n)):
        if is_isomorphism(G1, G2, p):
            yield list(p)
