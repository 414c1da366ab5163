"""Exact solvers for matrix Lie algebra conjugacy and the equivalence problems it reduces to."""

from .abelian import ConjugacyWitness, WeightTable, abelian_conjugate, verify_conjugacy, weight_table
from .codes import Code, brute_force_code_equivalent, code_equivalent, gi_to_code
from .cr import CRInstance, CRWitness, cr_equivalent, verify_cr_witness
from .errors import (
    BudgetExceeded,
    FieldMismatch,
    Inconsistent,
    InvalidInstance,
    LieConjError,
    NotAbelian,
    NotClosed,
    NotCommuting,
    NotDiagonalizableOverField,
    ShapeMismatch,
    SpectrumNotSplit,
    TooLarge,
    UnsupportedGroup,
)
from .fields import QQ, FieldSpec, ModInt
from .graphs import ColoredGraph, automorphisms, find_isomorphism, is_isomorphism, refine
from .lie import (
    MatrixLieAlgebra,
    StructureConstants,
    adjoint_rep,
    bracket,
    derived_series,
    is_abelian,
    is_closed,
    lie_closure,
    lower_central_series,
    structure_constants,
)
from .linalg import Matrix, charpoly, eigen, eigenvalues, kernel, rank, rref, simultaneous_diagonalize, solve
from .polys import DensePolynomial, apply_derivation, det_poly, perm_poly, symmetry_lie_algebra
from .problem_a import (
    BlockGroup,
    ProblemAInstance,
    ProblemAWitness,
    gi_to_problem_a,
    make_group,
    problem_a_to_gi,
    solve_boundedrows,
    solve_bruteforce,
    solve_via_gi,
    verify_witness,
)

__version__ = "0.1.0"

__all__ = [
    "BlockGroup",
    "BudgetExceeded",
    "CRInstance",
    "CRWitness",
    "Code",
    "ColoredGraph",
    "ConjugacyWitness",
    "DensePolynomial",
    "FieldMismatch",
    "FieldSpec",
    "Inconsistent",
    "InvalidInstance",
    "LieConjError",
    "Matrix",
    "MatrixLieAlgebra",
    "ModInt",
    "NotAbelian",
    "NotClosed",
    "NotCommuting",
    "NotDiagonalizableOverField",
    "ProblemAInstance",
    "ProblemAWitness",
    "QQ",
    "ShapeMismatch",
    "SpectrumNotSplit",
    "StructureConstants",
    "TooLarge",
    "UnsupportedGroup",
    "WeightTable",
    "abelian_conjugate",
    "adjoint_rep",
    "apply_derivation",
    "automorphisms",
    "bracket",
    "brute_force_code_equivalent",
    "charpoly",
    "code_equivalent",
    "cr_equivalent",
    "derived_series",
    "det_poly",
    "eigen",
    "eigenvalues",
    "find_isomorphism",
    "gi_to_code",
    "gi_to_problem_a",
    "is_abelian",
    "is_closed",
    "is_isomorphism",
    "kernel",
    "lie_closure",
    "lower_central_series",
    "make_group",
    "perm_poly",
    "problem_a_to_gi",
    "rank",
    "refine",
    "rref",
    "simultaneous_diagonalize",
    "solve",
    "solve_boundedrows",
    "solve_bruteforce",
    "solve_via_gi",
    "structure_constants",
    "symmetry_lie_algebra",
    "verify_conjugacy",
    "verify_cr_witness",
    "verify_witness",
    "weight_table",
]
