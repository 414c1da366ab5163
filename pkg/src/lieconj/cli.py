"""Command-line entry point: ``lieconj <command> ...``.

Every invocation prints exactly one JSON document.  Decision commands exit
with 0 (equivalent), 1 (not equivalent) or 2 (error); the informational
commands exit 0 on success.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from . import generators as gen
from . import serialize as ser
from .abelian import AbelianStats, abelian_conjugate, verify_conjugacy
from .codes import CodeStats, code_equivalent, gi_to_code, verify_code_witness
from .cr import CRStats, cr_equivalent, verify_cr_witness
from .errors import LieConjError
from .fields import FieldSpec
from .graphs import SearchStats, find_isomorphism, is_isomorphism
from .lie import (
    adjoint_rep,
    derived_series,
    is_abelian,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    structure_constants,
)
from .polys import det_poly, perm_poly, symmetry_lie_algebra
from .problem_a import (
    DEFAULT_BUDGET,
    SolveStats,
    gi_to_problem_a,
    problem_a_to_gi,
    solve,
    solve_boundedrows,
    solve_bruteforce,
    solve_via_gi,
    verify_witness,
)

EQUIVALENT, NOT_EQUIVALENT, OK, ERROR = "Equivalent", "NotEquivalent", "Ok", "Error"
EXIT = {EQUIVALENT: 0, OK: 0, NOT_EQUIVALENT: 1, ERROR: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _witness_payload(path: str) -> Any:
    """Accept either a bare witness or a full output document carrying one."""
    obj = _load(path)
    if isinstance(obj, dict) and "witness" in obj and "schema" in obj:
        return obj["witness"]
    return obj


def _field(args) -> FieldSpec | None:
    return FieldSpec.parse(args.field) if args.field else None


def _result(command: str, status: str, witness=None, diagnostics=None, **extra) -> dict:
    out = {"schema": ser.SCHEMA, "command": command, "status": status, "diagnostics": diagnostics or {}}
    if witness is not None:
        out["witness"] = witness
    out.update(extra)
    return out


def _decision(command: str, found, encode: Callable, diagnostics: dict, **extra) -> dict:
    if found is None:
        return _result(command, NOT_EQUIVALENT, None, diagnostics, **extra)
    return _result(command, EQUIVALENT, encode(found), diagnostics, **extra)


def _checked(command: str, ok: bool, payload) -> dict:
    """Outcome of ``--check``; a witness that verifies is echoed back."""
    return _result(command, EQUIVALENT if ok else NOT_EQUIVALENT, payload if ok else None, verified=ok)


# -- commands ---------------------------------------------------------------------------

def cmd_lac_abelian(args) -> dict:
    F = _field(args)
    L1 = ser.algebra_from_json(_load(args.first), F)
    L2 = ser.algebra_from_json(_load(args.second), F)
    if args.check:
        obj = _witness_payload(args.check)
        g = ser.matrix_from_json(obj, L1.field)
        return _checked("lac-abelian", verify_conjugacy(L1, L2, g), obj)
    st = AbelianStats()
    w = abelian_conjugate(L1, L2, st)
    diag = {"information_sets": st.codes.information_sets, "matchings": st.codes.matchings,
            "fast_fail": st.fast_fail}
    return _decision("lac-abelian", w, lambda x: ser.matrix_to_json(x.g), diag, conjugate=w is not None)


def cmd_cr_lac(args) -> dict:
    F = _field(args)
    I1 = ser.cr_from_json(_load(args.first), F)
    I2 = ser.cr_from_json(_load(args.second), F)
    if args.check:
        obj = _witness_payload(args.check)
        w = ser.cr_witness_from_json(obj, I1.field)
        return _checked("cr-lac", verify_cr_witness(I1, I2, w), obj)
    st = CRStats()
    w = cr_equivalent(I1, I2, args.budget, st)
    diag = {"candidates": st.candidates, "problem_a_candidates": st.pa.candidates}
    return _decision("cr-lac", w, ser.cr_witness_to_json, diag)


def cmd_code_equiv(args) -> dict:
    F = _field(args)
    C1 = ser.code_from_json(_load(args.first), F)
    C2 = ser.code_from_json(_load(args.second), F)
    if args.check:
        obj = _witness_payload(args.check)
        pi = obj["permutation"] if isinstance(obj, dict) else obj
        return _checked("code-equiv", verify_code_witness(C1, C2, tuple(pi)), {"permutation": list(pi)})
    st = CodeStats()
    pi = code_equivalent(C1, C2, st, via_graph=args.via_graph)
    diag = {"information_sets": st.information_sets, "matchings": st.matchings}
    return _decision("code-equiv", pi, lambda p: {"permutation": list(p)}, diag)


_PA_SOLVERS = {
    "auto": solve,
    "bruteforce": solve_bruteforce,
    "boundedrows": solve_boundedrows,
}


def cmd_problem_a(args) -> dict:
    I1 = ser.problem_a_from_json(_load(args.first))
    I2 = ser.problem_a_from_json(_load(args.second))
    if args.check:
        obj = _witness_payload(args.check)
        w = ser.pa_witness_from_json(obj)
        return _checked("problem-a", verify_witness(I1, I2, w), obj)
    st = SolveStats()
    if args.solver == "gi":
        w = solve_via_gi(I1, I2, st)
    else:
        w = _PA_SOLVERS[args.solver](I1, I2, args.budget, st)
    diag = {"candidates": st.candidates, "graph_nodes": st.graph_nodes, "solver": args.solver}
    return _decision("problem-a", w, ser.pa_witness_to_json, diag)


def cmd_graph_iso(args) -> dict:
    G1 = ser.graph_from_json(_load(args.first))
    G2 = ser.graph_from_json(_load(args.second))
    if args.check:
        obj = _witness_payload(args.check)
        mapping = obj["mapping"] if isinstance(obj, dict) else obj
        return _checked("graph-iso", is_isomorphism(G1, G2, list(mapping)), {"mapping": list(mapping)})
    st = SearchStats()
    f = find_isomorphism(G1, G2, st)
    return _decision("graph-iso", f, lambda m: {"mapping": list(m)}, {"nodes": st.nodes, "leaves": st.leaves})


def cmd_sym_lie(args) -> dict:
    f = ser.polynomial_from_json(_load(args.poly), _field(args))
    L = symmetry_lie_algebra(f)
    alg = ser.algebra_to_json(L)
    return _result("sym-lie", OK, None, {"variables": f.m, "terms": len(f.terms)},
                   dimension=L.dim, closed=L.closed, basis=alg["basis"])


def cmd_lie_info(args) -> dict:
    L = ser.algebra_from_json(_load(args.algebra), _field(args))
    info: dict = {"n": L.n, "dimension": L.dim, "closed": L.closed, "field": L.field.to_json()}
    if L.closed:
        sc = structure_constants(L)
        info.update(
            abelian=is_abelian(L),
            solvable=is_solvable(L),
            nilpotent=is_nilpotent(L),
            derived_series=[x.dim for x in derived_series(L)],
            lower_central_series=[x.dim for x in lower_central_series(L)],
            structure_constants=[[[ser.scalar_to_json(x) for x in v] for v in row] for row in sc.c],
            adjoint=[ser.matrix_to_json(m) for m in adjoint_rep(sc)],
        )
    return _result("lie-info", OK, None, {}, info=info)


def cmd_reduce(args) -> dict:
    if args.reduction == "gi-to-code":
        G = ser.graph_from_json(_load(args.input))
        F = _field(args) or FieldSpec(2)
        M = gi_to_code(G, F)
        out = {"schema": ser.SCHEMA, "kind": "code", **ser.matrix_to_json(M)}
        return _result("reduce gi-to-code", OK, None, {"rows": M.rows, "cols": M.cols}, output=out)
    if args.reduction == "gi-to-pa":
        G = ser.graph_from_json(_load(args.input))
        I = gi_to_problem_a(G)
        return _result("reduce gi-to-pa", OK, None, {"rows": I.r, "cols": I.s}, output=ser.problem_a_to_json(I))
    I = ser.problem_a_from_json(_load(args.input))
    gg = problem_a_to_gi(I)
    out = ser.graph_to_json(gg.graph)
    out["row_vertices"] = list(gg.row_vertex)
    out["col_vertices"] = list(gg.col_vertex)
    return _result("reduce pa-to-gi", OK, None, {"vertices": gg.graph.n, "edges": len(gg.graph.edges)}, output=out)


def cmd_gen(args) -> dict:
    rng = gen.rng_from_seed(args.seed)
    F = _field(args) or FieldSpec(None)
    kind = args.kind
    if kind == "abelian":
        n = args.n or 4
        d = min(args.d if args.d is not None else 2, n)
        if args.perturb and d > 0:
            L1, L2, _, _ = gen.perturbed_abelian_pair(n, d, F, rng)
        else:
            L1, L2, _ = gen.planted_abelian_pair(n, d, F, rng)
        pair = [ser.algebra_to_json(L1), ser.algebra_to_json(L2)]
    elif kind == "code":
        n = args.n or 6
        d = min(args.d if args.d is not None else 2, n)
        C1, C2 = gen.planted_code_pair(n, d, F, rng)
        if args.perturb:
            C2 = gen.random_code(n, d, F, rng)
        pair = [ser.code_to_json(C1), ser.code_to_json(C2)]
    elif kind == "graph":
        n = args.n or 6
        G = gen.random_graph(n, rng)
        H = gen.random_graph(n, rng) if args.perturb else gen.relabel_graph(G, gen.random_permutation(n, rng))
        pair = [ser.graph_to_json(G), ser.graph_to_json(H)]
    elif kind == "problem-a":
        I1, I2, _ = gen.planted_problem_a_pair(args.r or 3, args.s or 3, rng)
        pair = [ser.problem_a_to_json(I1), ser.problem_a_to_json(I2)]
    elif kind == "cr":
        r = args.r or 4
        a = min(args.a if args.a is not None else 1, r)
        s = args.s if args.s is not None else 2
        if args.perturb and a > 0:
            I1, I2 = gen.perturbed_cr_pair(r, a, s, F, rng)
        else:
            I1, I2 = gen.planted_cr_pair(r, a, s, F, rng)
        pair = [ser.cr_to_json(I1), ser.cr_to_json(I2)]
    elif kind in ("det", "perm"):
        f = (det_poly if kind == "det" else perm_poly)(args.n or 2, F)
        return _result("gen", OK, None, {"seed": args.seed}, output=ser.polynomial_to_json(f))
    else:
        raise UsageError(f"unknown generator {kind!r}")
    return _result("gen", OK, None, {"seed": args.seed, "perturbed": bool(args.perturb)}, output=pair)


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lieconj", description="Exact conjugacy and equivalence solvers.")
    p.add_argument("--field", help="Q or Fp:<prime>; used when a document does not name its field")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for compatibility; execution is sequential and output is unchanged")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def pair(name, fn, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("first")
        s.add_argument("second")
        s.add_argument("--check", metavar="WITNESS", help="only verify the witness stored in this file")
        s.set_defaults(fn=fn)
        return s

    pair("lac-abelian", cmd_lac_abelian, "conjugacy of abelian diagonalizable algebras")
    s = pair("cr-lac", cmd_cr_lac, "equivalence of completely reducible instances")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s = pair("code-equiv", cmd_code_equiv, "permutation equivalence of linear codes")
    s.add_argument("--via-graph", action="store_true", help="match residual matrices by graph isomorphism")
    s = pair("problem-a", cmd_problem_a, "Problem A equivalence")
    s.add_argument("--solver", choices=["auto", "bruteforce", "boundedrows", "gi"], default="auto")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pair("graph-iso", cmd_graph_iso, "colored graph isomorphism")

    s = sub.add_parser("sym-lie", help="Lie algebra of a polynomial's symmetry group")
    s.add_argument("poly")
    s.set_defaults(fn=cmd_sym_lie)
    s = sub.add_parser("lie-info", help="structure of a matrix Lie algebra")
    s.add_argument("algebra")
    s.set_defaults(fn=cmd_lie_info)
    s = sub.add_parser("reduce", help="run a reduction and print the produced instance")
    s.add_argument("reduction", choices=["gi-to-code", "gi-to-pa", "pa-to-gi"])
    s.add_argument("input")
    s.set_defaults(fn=cmd_reduce)
    s = sub.add_parser("gen", help="seeded planted or perturbed instance pairs")
    s.add_argument("kind", choices=["abelian", "code", "graph", "problem-a", "cr", "det", "perm"])
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--perturb", action="store_true")
    for flag in ("n", "d", "r", "a", "s"):
        s.add_argument(f"--{flag}", type=int)
    s.set_defaults(fn=cmd_gen)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[dict, int]:
    """Parse, dispatch and return ``(document, exit code)``."""
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "fn", None):
            raise UsageError("a command is required")
        out = args.fn(args)
    except UsageError as exc:
        out = _result("usage", ERROR, error={"code": "Usage", "message": str(exc)})
    except LieConjError as exc:
        out = _result(_command_name(argv), ERROR, error={"code": exc.code, "message": str(exc)})
    except (OSError, json.JSONDecodeError, KeyError, IndexError, TypeError, ValueError, ZeroDivisionError) as exc:
        out = _result(_command_name(argv), ERROR,
                      error={"code": "MalformedInput", "message": f"{type(exc).__name__}: {exc}"})
    return out, EXIT[out["status"]]


def _command_name(argv) -> str:
    argv = list(sys.argv[1:] if argv is None else argv)
    names = [a for a in argv if not a.startswith("-")]
    return names[0] if names else "unknown"


def main(argv: Sequence[str] | None = None) -> int:
    out, code = run(argv)
    sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
