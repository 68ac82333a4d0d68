"""Exact tridiagonal canonical forms of matrices and matrix pairs.

The package computes, over the Gaussian rationals (extended by real radicals
where materialization demands them):

* Kronecker block structure of a matrix pencil, with explicit nonsingular
  reducing matrices;
* canonical tridiagonal decompositions of a single square matrix under
  congruence or *congruence, and of symmetric, skew-symmetric, or Hermitian
  matrix pairs under the matching relation;
* constructive congruence witnesses upgrading a pencil equivalence
  R^T A S = A', R^T B S = B' to a single transform N with
  N^T A N = A', N^T B N = B'.
"""

from .errors import (
    CanonicalFormError,
    EigenvalueOutsideField,
    FieldLimitationError,
    MalformedPencil,
    NotEquivalent,
    NotHermitian,
    NotSkewSymmetric,
    NotSymmetric,
    ParseError,
    PencilNotCompatible,
    SingularMatrixError,
    SqrtNotInField,
    StructureError,
)
from .field import (
    I_UNIT,
    ONE,
    ZERO,
    GaussianRational,
    Rational,
    compare_fixed,
    conjugate,
    format_scalar,
    lex_key,
    modulus_squared,
    parse_scalar,
    rational_sqrt,
    sqrt_in_field,
)
from .tower import (
    TowerContext,
    TowerElement,
    format_tower,
    parse_tower,
    squarefree_split,
)
from .matrix import (
    Matrix,
    build_FG,
    build_M,
    build_jordan,
    direct_sum,
    evaluate_polynomial,
    hstack,
    vstack,
)
from .pencil import (
    KIND_FINITE,
    KIND_INFINITE,
    KIND_LEFT,
    KIND_RIGHT,
    KroneckerForm,
    PencilBlock,
    canonical_pair,
    jordan_form,
    kronecker_decompose,
    materialize_block,
    regular_eigenvalues,
)
from .summands import (
    FAMILIES,
    INFINITY,
    PAIR_FAMILIES,
    RELATIONS,
    CanonicalDecomposition,
    SummandDescriptor,
    build_N,
    cartesian_split,
    cc1,
    cc23,
    cm1,
    cm2,
    cm3,
    cmi1,
    cmi2,
    descriptor_sort_key,
    format_descriptor,
    he1,
    he2,
    lambda_from_mu,
    lyg,
    materialize,
    mu_from_lambda,
    nn_ident,
    p_orders,
    p_transform,
    parse_descriptor,
    sc1,
    sc2,
    sc3,
    ss2n,
    sss1n,
    ssnew,
    sym_skew_split,
)
from .canonicalize import (
    FAMILY_RELATION,
    canon_congruence,
    canon_pair_hermitian,
    canon_pair_skew_skew,
    canon_pair_sym_skew,
    canon_pair_sym_sym,
    canon_star_congruence,
    pencil_of,
    predicted_blocks,
    verify_table,
)
from .witness import (
    TruncatedSeries,
    matrix_sqrt_poly,
    series_solve_tau,
    series_sqrt,
    upgrade_to_congruence,
)

__version__ = "1.0.0"

__all__ = [
    "CanonicalFormError",
    "EigenvalueOutsideField",
    "FieldLimitationError",
    "MalformedPencil",
    "NotEquivalent",
    "NotHermitian",
    "NotSkewSymmetric",
    "NotSymmetric",
    "ParseError",
    "PencilNotCompatible",
    "SingularMatrixError",
    "SqrtNotInField",
    "StructureError",
    "I_UNIT",
    "ONE",
    "ZERO",
    "GaussianRational",
    "Rational",
    "compare_fixed",
    "conjugate",
    "format_scalar",
    "lex_key",
    "modulus_squared",
    "parse_scalar",
    "rational_sqrt",
    "sqrt_in_field",
    "TowerContext",
    "TowerElement",
    "format_tower",
    "parse_tower",
    "squarefree_split",
    "Matrix",
    "build_FG",
    "build_M",
    "build_jordan",
    "direct_sum",
    "evaluate_polynomial",
    "hstack",
    "vstack",
    "KIND_FINITE",
    "KIND_INFINITE",
    "KIND_LEFT",
    "KIND_RIGHT",
    "KroneckerForm",
    "PencilBlock",
    "canonical_pair",
    "jordan_form",
    "kronecker_decompose",
    "materialize_block",
    "regular_eigenvalues",
    "FAMILIES",
    "INFINITY",
    "PAIR_FAMILIES",
    "RELATIONS",
    "CanonicalDecomposition",
    "SummandDescriptor",
    "build_N",
    "cartesian_split",
    "cc1",
    "cc23",
    "cm1",
    "cm2",
    "cm3",
    "cmi1",
    "cmi2",
    "descriptor_sort_key",
    "format_descriptor",
    "he1",
    "he2",
    "lambda_from_mu",
    "lyg",
    "materialize",
    "mu_from_lambda",
    "nn_ident",
    "p_orders",
    "p_transform",
    "parse_descriptor",
    "sc1",
    "sc2",
    "sc3",
    "ss2n",
    "sss1n",
    "ssnew",
    "sym_skew_split",
    "FAMILY_RELATION",
    "canon_congruence",
    "canon_pair_hermitian",
    "canon_pair_skew_skew",
    "canon_pair_sym_skew",
    "canon_pair_sym_sym",
    "canon_star_congruence",
    "pencil_of",
    "predicted_blocks",
    "verify_table",
    "TruncatedSeries",
    "matrix_sqrt_poly",
    "series_solve_tau",
    "series_sqrt",
    "upgrade_to_congruence",
]
