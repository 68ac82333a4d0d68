"""Exact matrices: construction, arithmetic, elimination, builders."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from tricanon import (
    GaussianRational,
    Matrix,
    SingularMatrixError,
    build_FG,
    build_M,
    build_jordan,
    direct_sum,
    evaluate_polynomial,
    hstack,
    vstack,
)
from tricanon.field import I_UNIT

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def square_matrices(n):
    return st.lists(
        st.lists(small_fractions, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(Matrix)


def _to_sympy(m: Matrix):
    rows = []
    for i in range(m.rows):
        row = []
        for v in m.row(i):
            g = GaussianRational._coerce(v)
            row.append(
                sympy.Rational(g.re.numerator, g.re.denominator)
                + sympy.I * sympy.Rational(g.im.numerator, g.im.denominator)
            )
        rows.append(row)
    return sympy.Matrix(rows)


# -- construction ---------------------------------------------------------------


def test_construction_and_shape():
    m = Matrix([[1, 2], [3, 4], [5, 6]])
    assert m.shape == (3, 2)
    assert m.row(1) == (Fraction(3), Fraction(4))
    assert m.column(0) == (Fraction(1), Fraction(3), Fraction(5))
    assert not m.is_square()


def test_construction_rejects_ragged_rows():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


def test_zeros_identity_diagonal():
    assert Matrix.zeros(2, 3).to_lists() == [[0, 0, 0], [0, 0, 0]]
    assert Matrix.identity(2).to_lists() == [[1, 0], [0, 1]]
    assert Matrix.diagonal([1, 2]).to_lists() == [[1, 0], [0, 2]]


def test_from_cols():
    m = Matrix.from_cols([(1, 2), (3, 4)], 2)
    assert m.to_lists() == [[1, 3], [2, 4]]


def test_empty_matrices():
    e = Matrix.zeros(0, 0)
    assert e.shape == (0, 0)
    assert e.det() == 1
    assert e.rank() == 0
    assert (e * e).shape == (0, 0)


# -- arithmetic -----------------------------------------------------------------


def test_add_sub_neg():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[4, 3], [2, 1]])
    assert (a + b).to_lists() == [[5, 5], [5, 5]]
    assert (a - b).to_lists() == [[-3, -1], [1, 3]]
    assert (-a).to_lists() == [[-1, -2], [-3, -4]]


def test_matmul_pinned():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert (a * b).to_lists() == [[2, 1], [4, 3]]
    assert (b * a).to_lists() == [[3, 4], [1, 2]]


def test_scalar_multiplication():
    a = Matrix([[1, 2], [3, 4]])
    assert (a * 2).to_lists() == [[2, 4], [6, 8]]
    assert (Fraction(1, 2) * a).to_lists() == [[Fraction(1, 2), 1], [Fraction(3, 2), 2]]
    assert (I_UNIT * a).row(0) == (I_UNIT, GaussianRational(0, 2))


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        Matrix([[1, 2]]) + Matrix([[1]])
    with pytest.raises(ValueError):
        Matrix([[1, 2]]) * Matrix([[1, 2]])


def test_transpose_and_adjoints():
    a = Matrix([[1, I_UNIT], [0, 2]])
    assert a.transpose().to_lists() == [[1, 0], [I_UNIT, 2]]
    assert a.conjugate().row(0) == (GaussianRational(1), -I_UNIT)
    assert a.conjugate_transpose().row(1) == (-I_UNIT, GaussianRational(2))


def test_structure_predicates():
    assert Matrix([[0, 1], [1, 0]]).is_symmetric()
    assert not Matrix([[0, 1], [-1, 0]]).is_symmetric()
    assert Matrix([[0, 1], [-1, 0]]).is_skew_symmetric()
    assert Matrix([[1, I_UNIT], [-I_UNIT, 2]]).is_hermitian()
    assert not Matrix([[1, I_UNIT], [I_UNIT, 2]]).is_hermitian()
    assert Matrix([[1, 2, 0], [1, 1, 1], [0, 2, 2]]).is_tridiagonal()
    assert not Matrix([[1, 0, 3], [0, 1, 0], [0, 0, 1]]).is_tridiagonal()


def test_permute_rows_and_cols():
    a = Matrix([[1, 2], [3, 4]])
    assert a.permute_rows([1, 0]).to_lists() == [[3, 4], [1, 2]]
    assert a.permute_cols([1, 0]).to_lists() == [[2, 1], [4, 3]]


def test_block_and_stacks():
    a = Matrix([[1]])
    b = Matrix([[2]])
    assert direct_sum(a, b).to_lists() == [[1, 0], [0, 2]]
    assert hstack(a, b).to_lists() == [[1, 2]]
    assert vstack(a, b).to_lists() == [[1], [2]]
    assert direct_sum(Matrix.zeros(0, 0), a).to_lists() == [[1]]


# -- elimination ----------------------------------------------------------------


def test_det_pinned():
    assert Matrix([[1, 2], [3, 4]]).det() == -2
    assert Matrix([[2]]).det() == 2
    assert Matrix([[1, 1], [1, 1]]).det() == 0


@given(square_matrices(3))
def test_det_matches_sympy(m):
    assert sympy.simplify(_to_sympy(m).det() - _to_sympy(Matrix([[m.det()]]))[0, 0]) == 0


@given(square_matrices(3))
def test_rank_matches_sympy(m):
    assert m.rank() == _to_sympy(m).rank()


def test_inverse_pinned():
    a = Matrix([[1, 2], [3, 4]])
    assert (a * a.inverse()).to_lists() == [[1, 0], [0, 1]]
    with pytest.raises(SingularMatrixError):
        Matrix([[1, 1], [1, 1]]).inverse()


@given(square_matrices(3))
def test_inverse_round_trip(m):
    if m.det() == 0:
        return
    assert m * m.inverse() == Matrix.identity(3)
    assert m.inverse() * m == Matrix.identity(3)


def test_trace():
    assert Matrix([[1, 2], [3, 4]]).trace() == 5


def test_solve_right_and_kernel():
    a = Matrix([[1, 2], [2, 4]])
    kernel = a.right_kernel()
    assert len(kernel) == 1
    v = kernel[0]
    assert all(not x for x in (a * Matrix([[v[0]], [v[1]]])).column(0))

    b = Matrix([[1, 0], [0, 1]])
    x = Matrix([[1, 2], [3, 4]]).solve_right(b)
    assert Matrix([[1, 2], [3, 4]]) * x == b


@given(square_matrices(3))
def test_kernel_dimension_complements_rank(m):
    assert len(m.right_kernel()) == 3 - m.rank()


# -- builders -------------------------------------------------------------------


def test_build_jordan():
    j = build_jordan(3, Fraction(5))
    assert j.to_lists() == [[5, 1, 0], [0, 5, 1], [0, 0, 5]]
    assert build_jordan(1, 0).to_lists() == [[0]]


def test_build_FG():
    f, g = build_FG(2)
    assert f.to_lists() == [[1, 0, 0], [0, 1, 0]]
    assert g.to_lists() == [[0, 1, 0], [0, 0, 1]]
    f0, g0 = build_FG(0)
    assert f0.shape == (0, 1)
    assert g0.shape == (0, 1)


def test_build_M():
    assert build_M("+", 1).to_lists() == [[0, 1], [1, 0]]
    assert build_M("-", 1).to_lists() == [[0, 1], [-1, 0]]
    assert build_M("+", 2).shape == (4, 4)
    assert build_M("-", 0).shape == (0, 0)
    with pytest.raises(ValueError):
        build_M("x", 1)


def test_evaluate_polynomial():
    m = Matrix([[0, 1], [0, 0]])
    # p(x) = 1 + 2x evaluated at the nilpotent block
    p = evaluate_polynomial([Fraction(1), Fraction(2)], m)
    assert p.to_lists() == [[1, 2], [0, 1]]
    assert evaluate_polynomial([Fraction(7)], m).to_lists() == [[7, 0], [0, 7]]


@given(square_matrices(2), st.lists(small_fractions, min_size=1, max_size=4))
def test_evaluate_polynomial_matches_horner(m, coeffs):
    direct = Matrix.zeros(2, 2)
    power = Matrix.identity(2)
    for c in coeffs:
        direct = direct + power * c
        power = power * m
    assert evaluate_polynomial(coeffs, m) == direct
