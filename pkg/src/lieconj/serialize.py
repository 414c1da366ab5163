"""JSON documents for every object the command line reads or writes.

Scalars are written as ``["num", "den"]`` decimal-string pairs over Q and as
integers in ``0..p-1`` over F_p; on input a bare integer or a ``"3/4"`` string
is accepted as well.  Matrices are ``{"field", "rows", "cols", "entries"}``
with the entries flattened row-major.  Every top-level document carries
``"schema": "lieconj/1"``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .codes import Code
from .cr import CRInstance, CRWitness
from .errors import FieldMismatch, InvalidInstance
from .fields import QQ, FieldSpec, ModInt, Scalar
from .graphs import ColoredGraph
from .lie import MatrixLieAlgebra
from .linalg import Matrix
from .polys import DensePolynomial
from .problem_a import BlockGroup, ProblemAInstance, ProblemAWitness, make_group

SCHEMA = "lieconj/1"


def scalar_to_json(x: Scalar):
    if isinstance(x, ModInt):
        return x.v
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def scalar_from_json(obj, F: FieldSpec) -> Scalar:
    if isinstance(obj, list):
        if len(obj) != 2:
            raise InvalidInstance(f"scalar {obj!r} must be [num, den]")
        return F(Fraction(int(obj[0]), int(obj[1])))
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise InvalidInstance(f"cannot read scalar {obj!r}")
    return F(obj)


def _field_of(obj: dict, default: FieldSpec | None) -> FieldSpec:
    if "field" in obj:
        F = FieldSpec.from_json(obj["field"])
        if default is not None and default != F:
            raise FieldMismatch(f"document is over {F} but {default} was requested")
        return F
    return QQ if default is None else default


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(y) for y in x)
    return x


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    return x


# -- matrices and algebras ----------------------------------------------------------

def matrix_to_json(M: Matrix) -> dict:
    return {
        "field": M.field.to_json(),
        "rows": M.rows,
        "cols": M.cols,
        "entries": [scalar_to_json(x) for x in M.flatten()],
    }


def _rows_from_json(rows, F: FieldSpec) -> list[list[Scalar]]:
    return [[scalar_from_json(x, F) for x in row] for row in rows]


def matrix_from_json(obj, field: FieldSpec | None = None) -> Matrix:
    """Read a matrix object, or a bare list of rows."""
    if isinstance(obj, list):
        F = QQ if field is None else field
        return Matrix.from_rows(_rows_from_json(obj, F), F)
    F = _field_of(obj, field)
    if "entries" in obj:
        r, c = int(obj["rows"]), int(obj["cols"])
        flat = [scalar_from_json(x, F) for x in obj["entries"]]
        if len(flat) != r * c:
            raise InvalidInstance(f"expected {r * c} entries, got {len(flat)}")
        return Matrix.from_rows([flat[i * c:(i + 1) * c] for i in range(r)], F, cols=c)
    return Matrix.from_rows(_rows_from_json(obj["data"], F), F, cols=obj.get("cols"))


def algebra_to_json(L: MatrixLieAlgebra) -> dict:
    return {
        "schema": SCHEMA,
        "field": L.field.to_json(),
        "n": L.n,
        "basis": [matrix_to_json(b) for b in L.basis],
    }


def algebra_from_json(obj: dict, field: FieldSpec | None = None) -> MatrixLieAlgebra:
    F = _field_of(obj, field)
    mats = [matrix_from_json(b, F) for b in obj["basis"]]
    n = obj.get("n")
    if n is None:
        if not mats:
            raise InvalidInstance("an empty basis needs an explicit n")
        n = mats[0].rows
    return MatrixLieAlgebra.span(mats, n, F)


# -- graphs and codes ---------------------------------------------------------------

def graph_to_json(G: ColoredGraph) -> dict:
    return {
        "schema": SCHEMA,
        "n": G.n,
        "directed": G.directed,
        "vcolors": [_plain(c) for c in G.vertex_colors],
        "edges": [[u, v, _plain(c)] for u, v, c in G.edges],
    }


def graph_from_json(obj: dict) -> ColoredGraph:
    n = int(obj["n"])
    colors = obj.get("vcolors", obj.get("vertex_colors"))
    colors = tuple(_hashable(c) for c in colors) if colors is not None else (0,) * n
    edges = []
    for e in obj["edges"]:
        if len(e) not in (2, 3):
            raise InvalidInstance(f"edge {e!r} must be [u, v] or [u, v, color]")
        edges.append((int(e[0]), int(e[1]), _hashable(e[2]) if len(e) == 3 else 0))
    return ColoredGraph(n, bool(obj.get("directed", False)), colors, tuple(edges))


def code_to_json(C: Code) -> dict:
    """A matrix document (the RREF generator) tagged ``"kind": "code"``."""
    return {"schema": SCHEMA, "kind": "code", **matrix_to_json(C.generator)}


def code_from_json(obj: dict, field: FieldSpec | None = None) -> Code:
    """Read a code document; a ``"generator"`` wrapper around a matrix is accepted too."""
    if "generator" in obj:
        G = obj["generator"]
        if isinstance(G, list):
            G = {"data": G, "cols": obj.get("n")}
        if "field" in obj and isinstance(G, dict) and "field" not in G:
            G = {**G, "field": obj["field"]}
        return Code.from_generator(matrix_from_json(G, field))
    return Code.from_generator(matrix_from_json(obj, field))


# -- Problem A and CR instances -----------------------------------------------------

def group_to_json(G: BlockGroup) -> dict:
    return {"kind": G.kind, "alphabet": list(G.alphabet), "elements": [list(e) for e in G.elements]}


def group_from_json(obj: dict) -> BlockGroup:
    kind = obj["kind"]
    if "elements" in obj:
        return BlockGroup(kind, tuple(obj["alphabet"]), tuple(tuple(e) for e in obj["elements"]))
    if "generators" in obj:
        gens = [{int(k): int(v) for k, v in g.items()} for g in obj["generators"]]
        return BlockGroup.generated(kind, obj["alphabet"], gens)
    return make_group(kind, obj.get("fixed", ()), obj.get("pairs", ()), obj.get("triples", ()),
                      obj.get("regular", ()))


def problem_a_to_json(I: ProblemAInstance) -> dict:
    out = {
        "schema": SCHEMA,
        "M": [list(r) for r in I.M],
        "blocks": list(I.blocks),
        "groups": [group_to_json(G) for G in I.groups],
        "ncols": I.s,
    }
    if I.row_colors is not None:
        out["row_colors"] = [_plain(c) for c in I.row_colors]
    return out


def problem_a_from_json(obj: dict) -> ProblemAInstance:
    colors = obj.get("row_colors")
    blocks = tuple(obj["blocks"])
    return ProblemAInstance(
        tuple(tuple(r) for r in obj["M"]),
        blocks,
        tuple(group_from_json(g) for g in obj["groups"]),
        tuple(_hashable(c) for c in colors) if colors is not None else None,
        obj.get("ncols", sum(blocks)),
    )


def pa_witness_to_json(w: ProblemAWitness) -> dict:
    return {"row_perm": list(w.row_perm), "col_perm": list(w.col_perm), "group_elems": list(w.group_elems)}


def pa_witness_from_json(obj: dict) -> ProblemAWitness:
    return ProblemAWitness(tuple(obj["row_perm"]), tuple(obj["col_perm"]), tuple(obj["group_elems"]))


def cr_to_json(I: CRInstance) -> dict:
    return {"schema": SCHEMA, "weights": matrix_to_json(I.weights), "pa": problem_a_to_json(I.pa)}


def cr_from_json(obj: dict, field: FieldSpec | None = None) -> CRInstance:
    return CRInstance(matrix_from_json(obj["weights"], field), problem_a_from_json(obj["pa"]))


def cr_witness_to_json(w: CRWitness) -> dict:
    return {"pa": pa_witness_to_json(w.pa_witness), "abelian_change": matrix_to_json(w.abelian_change)}


def cr_witness_from_json(obj: dict, field: FieldSpec | None = None) -> CRWitness:
    return CRWitness(pa_witness_from_json(obj["pa"]), matrix_from_json(obj["abelian_change"], field))


# -- polynomials --------------------------------------------------------------------

def polynomial_to_json(f: DensePolynomial) -> dict:
    return {
        "schema": SCHEMA,
        "m": f.m,
        "field": f.field.to_json(),
        "terms": [{"exp": list(e), "coef": scalar_to_json(c)} for e, c in f.terms.items()],
    }


def polynomial_from_json(obj: dict, field: FieldSpec | None = None) -> DensePolynomial:
    F = _field_of(obj, field)
    return DensePolynomial(int(obj["m"]), {tuple(t["exp"]): scalar_from_json(t["coef"], F) for t in obj["terms"]}, F)


def document(kind: str, payload: Any) -> dict:
    """Wrap an object in a top-level document tagged with its kind."""
    return {"schema": SCHEMA, "kind": kind, "data": payload}
