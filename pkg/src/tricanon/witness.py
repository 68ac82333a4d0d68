"""Constructive congruence witnesses for (skew-)symmetric matrix pairs.

Given an equivalence R^T A S = A', R^T B S = B' between pairs whose members
are symmetric or skew-symmetric consistently, the congruence upgrade builds a
polynomial square root f with f(M)^2 = M for M = S R^{-1} and returns
N = f(M) R, which satisfies N^T A N = A' and N^T B N = B' exactly.  The square
root is assembled from truncated power series at each eigenvalue of M and glued
with the cofactor polynomials of the characteristic factorization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import SingularMatrixError, SqrtNotInField, StructureError
from .field import GaussianRational, ONE, ZERO, format_scalar, sqrt_in_field
from .matrix import Matrix, evaluate_polynomial
from .pencil import jordan_form


@dataclass(frozen=True)
class TruncatedSeries:
    """A polynomial c0 + c1 x + ... + c_{k-1} x^{k-1} viewed modulo x^k."""

    coefficients: Tuple[GaussianRational, ...]

    def __post_init__(self):
        if len(self.coefficients) < 1:
            raise ValueError("a truncated series needs at least one coefficient")
        coerced = []
        for value in self.coefficients:
            scalar = GaussianRational._coerce(value)
            if scalar is None:
                raise TypeError(f"series coefficients must be scalars, got {value!r}")
            coerced.append(scalar)
        object.__setattr__(self, "coefficients", tuple(coerced))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, index: int) -> GaussianRational:
        return self.coefficients[index]

    def __str__(self) -> str:
        terms = []
        for power, value in enumerate(self.coefficients):
            if not value and len(self.coefficients) > 1:
                continue
            token = format_scalar(value)
            if power == 0:
                terms.append(token)
            elif power == 1:
                terms.append(f"({token})*x")
            else:
                terms.append(f"({token})*x^{power}")
        return " + ".join(terms) if terms else "0"


def _coefficients(series) -> list[GaussianRational]:
    if isinstance(series, TruncatedSeries):
        return list(series.coefficients)
    return list(TruncatedSeries(tuple(series)).coefficients)


def _scalar(value) -> GaussianRational:
    coerced = GaussianRational._coerce(value)
    if coerced is None:
        raise TypeError(f"expected a scalar over the Gaussian rationals, got {value!r}")
    return coerced


def _poly_mul(p: list, q: list) -> list:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if not pi:
            continue
        for j, qj in enumerate(q):
            if qj:
                out[i + j] = out[i + j] + pi * qj
    return out


def _poly_add(p: list, q: list) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, qi in enumerate(q):
        out[i] = out[i] + qi
    return out


def _shift_polynomial(coefficients: list, offset: GaussianRational) -> list:
    """Coefficients of p(x + offset) from the coefficients of p(x)."""
    out = [ZERO] * len(coefficients)
    for degree, value in enumerate(coefficients):
        if not value:
            continue
        power = ONE
        for target in range(degree, -1, -1):
            out[target] = out[target] + value * math.comb(degree, target) * power
            power = power * offset
    return out


def series_sqrt(lam, k: int) -> TruncatedSeries:
    """Truncated series psi with psi(x)^2 = lam + x modulo x^k."""
    lam = _scalar(lam)
    if k < 1:
        raise ValueError("series_sqrt requires k >= 1")
    if lam == ZERO:
        raise ValueError("series_sqrt requires a nonzero base point")
    root = sqrt_in_field(lam)
    if root is None:
        raise SqrtNotInField(lam)
    coefficients = [root]
    binomial = Fraction(1)
    lam_power = ONE
    for j in range(1, k):
        binomial = binomial * (Fraction(1, 2) - (j - 1)) / j
        lam_power = lam_power * lam
        coefficients.append(root * binomial / lam_power)
    return TruncatedSeries(tuple(coefficients))


def series_solve_tau(lam, phi, psi, k: int) -> TruncatedSeries:
    """Solve phi(lam + x) * tau(x) = psi(x) modulo x^k for tau."""
    lam = _scalar(lam)
    if k < 1:
        raise ValueError("series_solve_tau requires k >= 1")
    shifted = _shift_polynomial(_coefficients(phi), lam)
    constant = shifted[0] if shifted else ZERO
    if not constant:
        raise ValueError("series_solve_tau requires phi(lam) != 0")
    psi_coefficients = _coefficients(psi)
    tau: list[GaussianRational] = []
    for j in range(k):
        acc = psi_coefficients[j] if j < len(psi_coefficients) else ZERO
        for m in range(j):
            g = shifted[j - m] if j - m < len(shifted) else ZERO
            if g:
                acc = acc - tau[m] * g
        tau.append(acc / constant)
    return TruncatedSeries(tuple(tau))


def matrix_sqrt_poly(m: Matrix) -> tuple[TruncatedSeries, Matrix]:
    """Polynomial f and the matrix f(m) with f(m)^2 = m, for nonsingular m.

    The polynomial is interpolated across the spectrum: for each eigenvalue
    the local square-root series is matched modulo the eigenvalue's factor of
    the characteristic polynomial, so a single f works on every Jordan block.
    """
    m._require_square("matrix_sqrt_poly")
    if m.rows == 0:
        return TruncatedSeries((ONE,)), m
    if not m.det():
        raise SingularMatrixError("matrix_sqrt_poly requires a nonsingular matrix")
    jordan_blocks, _ = jordan_form(m)
    multiplicities: dict[GaussianRational, int] = {}
    for lam, size in jordan_blocks:
        multiplicities[lam] = multiplicities.get(lam, 0) + size
    eigenvalues = sorted(multiplicities, key=lambda v: (v.modulus_squared(), v.re, v.im))

    f: list[GaussianRational] = [ZERO]
    for lam in eigenvalues:
        k = multiplicities[lam]
        phi: list[GaussianRational] = [ONE]
        for other in eigenvalues:
            if other == lam:
                continue
            factor = [-other, ONE]
            for _ in range(multiplicities[other]):
                phi = _poly_mul(phi, factor)
        psi = series_sqrt(lam, k)
        tau = series_solve_tau(lam, phi, psi, k)
        local = _shift_polynomial(list(tau.coefficients), -lam)
        f = _poly_add(f, _poly_mul(phi, local))

    while len(f) > 1 and not f[-1]:
        f.pop()
    f_of_m = evaluate_polynomial(f, m)
    if f_of_m * f_of_m != m:
        raise RuntimeError("internal error: polynomial square root failed verification")
    return TruncatedSeries(tuple(f)), f_of_m


def _check_matching_symmetry(first: Matrix, second: Matrix, label: str):
    if first.is_symmetric() and second.is_symmetric():
        return
    if first.is_skew_symmetric() and second.is_skew_symmetric():
        return
    raise StructureError(
        f"{label} and {label}' must both be symmetric or both be skew-symmetric"
    )


def upgrade_to_congruence(
    a: Matrix, b: Matrix, a_target: Matrix, b_target: Matrix, r: Matrix, s: Matrix
) -> Matrix:
    """Turn the equivalence R^T A S = A', R^T B S = B' into a congruence.

    Returns N with N^T A N = A' and N^T B N = B'.  The members of each pair
    must be symmetric or skew-symmetric, matching their primed counterparts.
    """
    matrices = (a, b, a_target, b_target, r, s)
    for matrix in matrices:
        matrix._require_square("upgrade_to_congruence")
    if len({matrix.shape for matrix in matrices}) != 1:
        raise ValueError("all six matrices must share one square shape")
    r_t = r.transpose()
    if r_t * a * s != a_target or r_t * b * s != b_target:
        raise ValueError("inputs must satisfy R^T A S = A' and R^T B S = B'")
    _check_matching_symmetry(a, a_target, "A")
    _check_matching_symmetry(b, b_target, "B")
    m = s * r.inverse()
    _, f_of_m = matrix_sqrt_poly(m)
    n = f_of_m * r
    if n.transpose() * a * n != a_target or n.transpose() * b * n != b_target:
        raise RuntimeError("internal error: congruence upgrade failed verification")
    return n
