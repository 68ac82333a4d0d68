"""Exact dense matrices over Q(i) and its real radical towers.

Entries are Fractions, GaussianRationals, or TowerElements; integer inputs
are normalized to Fractions at construction so that every division stays
exact.  All elimination-based operations (rank, inverse, kernels, solving)
work over any of these scalar types, including mixtures, because the
scalar classes coerce one another.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularMatrixError
from .field import GaussianRational, conjugate
from .tower import TowerElement

_F0 = Fraction(0)
_F1 = Fraction(1)


def _coerce_entry(value):
    if isinstance(value, (Fraction, GaussianRational, TowerElement)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"matrix entries must be exact scalars, got {value!r}")


class Matrix:
    """An immutable rows x cols matrix of exact scalars."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = [list(row) for row in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            if rows == 0:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(data[0]) if data else 0
        if len(data) != rows:
            raise ValueError("row count does not match data")
        for row in data:
            if len(row) != cols:
                raise ValueError("matrix rows must all have the same length")
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(_coerce_entry(v) for v in row) for row in data)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        self = object.__new__(cls)
        self.rows, self.cols = rows, cols
        self.data = tuple(tuple(_F0 for _ in range(cols)) for _ in range(rows))
        return self

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        self = object.__new__(cls)
        self.rows = self.cols = n
        self.data = tuple(
            tuple(_F1 if i == j else _F0 for j in range(n)) for i in range(n)
        )
        return self

    @classmethod
    def _from_data(cls, data, rows, cols) -> "Matrix":
        # Internal: data already a tuple-of-tuples of exact scalars.
        self = object.__new__(cls)
        self.rows, self.cols = rows, cols
        self.data = data
        return self

    @classmethod
    def from_cols(cls, columns, rows: int) -> "Matrix":
        """Matrix whose j-th column is columns[j] (each a length-``rows`` sequence)."""
        cols = len(columns)
        data = [[_coerce_entry(columns[j][i]) for j in range(cols)] for i in range(rows)]
        return cls(data, rows=rows, cols=cols)

    @classmethod
    def diagonal(cls, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        data = [
            [_coerce_entry(entries[i]) if i == j else _F0 for j in range(n)]
            for i in range(n)
        ]
        return cls(data, rows=n, cols=n)

    # -- basic access -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def to_lists(self) -> list[list]:
        return [list(row) for row in self.data]

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        data = tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.data, other.data)
        )
        return Matrix._from_data(data, self.rows, self.cols)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} - {other.shape}")
        data = tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.data, other.data)
        )
        return Matrix._from_data(data, self.rows, self.cols)

    def __neg__(self):
        data = tuple(tuple(-a for a in row) for row in self.data)
        return Matrix._from_data(data, self.rows, self.cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
            bdata = other.data
            out = []
            for i in range(self.rows):
                arow = self.data[i]
                orow = []
                for j in range(other.cols):
                    acc = _F0
                    for k in range(self.cols):
                        a = arow[k]
                        if a:
                            b = bdata[k][j]
                            if b:
                                acc = acc + a * b
                    orow.append(acc)
                out.append(tuple(orow))
            return Matrix._from_data(tuple(out), self.rows, other.cols)
        scalar = _try_scalar(other)
        if scalar is None:
            return NotImplemented
        data = tuple(tuple(scalar * a for a in row) for row in self.data)
        return Matrix._from_data(data, self.rows, self.cols)

    def __rmul__(self, other):
        scalar = _try_scalar(other)
        if scalar is None:
            return NotImplemented
        data = tuple(tuple(scalar * a for a in row) for row in self.data)
        return Matrix._from_data(data, self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        for ra, rb in zip(self.data, other.data):
            for a, b in zip(ra, rb):
                if a != b:
                    return False
        return True

    __hash__ = None

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    # -- shape operations --------------------------------------------------

    def transpose(self) -> "Matrix":
        data = tuple(
            tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)
        )
        return Matrix._from_data(data, self.cols, self.rows)

    def conjugate(self) -> "Matrix":
        data = tuple(tuple(conjugate(v) for v in row) for row in self.data)
        return Matrix._from_data(data, self.rows, self.cols)

    def conjugate_transpose(self) -> "Matrix":
        return self.conjugate().transpose()

    def permute_rows(self, order) -> "Matrix":
        """New matrix whose row i is this matrix's row order[i]."""
        order = list(order)
        if sorted(order) != list(range(self.rows)):
            raise ValueError("order is not a permutation of the row indices")
        data = tuple(self.data[i] for i in order)
        return Matrix._from_data(data, self.rows, self.cols)

    def permute_cols(self, order) -> "Matrix":
        """New matrix whose column j is this matrix's column order[j]."""
        order = list(order)
        if sorted(order) != list(range(self.cols)):
            raise ValueError("order is not a permutation of the column indices")
        data = tuple(tuple(row[j] for j in order) for row in self.data)
        return Matrix._from_data(data, self.rows, self.cols)

    def block(self, row_start, row_stop, col_start, col_stop) -> "Matrix":
        data = tuple(row[col_start:col_stop] for row in self.data[row_start:row_stop])
        return Matrix._from_data(data, row_stop - row_start, col_stop - col_start)

    # -- predicates ---------------------------------------------------------

    def _require_square(self, what: str):
        if self.rows != self.cols:
            raise ValueError(f"{what} requires a square matrix, got {self.shape}")

    def is_symmetric(self) -> bool:
        self._require_square("symmetry test")
        for i in range(self.rows):
            for j in range(i + 1, self.cols):
                if self.data[i][j] != self.data[j][i]:
                    return False
        return True

    def is_skew_symmetric(self) -> bool:
        # Over a field of characteristic 0 the zero diagonal is implied by
        # the sign condition.
        self._require_square("skew-symmetry test")
        for i in range(self.rows):
            for j in range(i, self.cols):
                if self.data[i][j] != -self.data[j][i]:
                    return False
        return True

    def is_hermitian(self) -> bool:
        self._require_square("Hermitian test")
        for i in range(self.rows):
            for j in range(i, self.cols):
                if self.data[i][j] != conjugate(self.data[j][i]):
                    return False
        return True

    def is_tridiagonal(self) -> bool:
        for i in range(self.rows):
            for j in range(self.cols):
                if abs(i - j) > 1 and self.data[i][j]:
                    return False
        return True

    # -- elimination-based operations ---------------------------------------

    def rank(self) -> int:
        return _forward_rank([list(r) for r in self.data], self.cols)

    def det(self):
        self._require_square("determinant")
        return _det([list(r) for r in self.data], self.rows)

    def inverse(self) -> "Matrix":
        self._require_square("inversion")
        n = self.rows
        aug = [list(self.data[i]) + [_F1 if i == j else _F0 for j in range(n)]
               for i in range(n)]
        reduced, pivots = _rref(aug, n)
        if len(pivots) != n:
            raise SingularMatrixError("matrix is singular")
        data = tuple(tuple(reduced[i][n:]) for i in range(n))
        return Matrix._from_data(data, n, n)

    def trace(self):
        self._require_square("trace")
        acc = _F0
        for i in range(self.rows):
            acc = acc + self.data[i][i]
        return acc

    def right_kernel(self) -> list[tuple]:
        """Basis vectors (as tuples) of the right null space."""
        reduced, pivots = _rref([list(r) for r in self.data], self.cols)
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for f in free:
            vec = [_F0] * self.cols
            vec[f] = _F1
            for r, c in enumerate(pivots):
                vec[c] = -reduced[r][f]
            basis.append(tuple(vec))
        return basis

    def solve_right(self, rhs: "Matrix") -> "Matrix | None":
        """One exact solution X of self * X = rhs, or None if inconsistent.

        Free variables are set to zero.
        """
        if rhs.rows != self.rows:
            raise ValueError(f"shape mismatch: {self.shape} X = {rhs.shape}")
        n, k = self.cols, rhs.cols
        aug = [list(self.data[i]) + list(rhs.data[i]) for i in range(self.rows)]
        reduced, pivots = _rref(aug, n + k)
        for c in pivots:
            if c >= n:
                return None
        data = [[_F0] * k for _ in range(n)]
        for r, c in enumerate(pivots):
            for j in range(k):
                data[c][j] = reduced[r][n + j]
        return Matrix(data, rows=n, cols=k)


def _try_scalar(value):
    if isinstance(value, (Fraction, GaussianRational, TowerElement)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return None


def _rref(rows: list[list], ncols: int):
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    pivots = []
    pr = 0
    nrows = len(rows)
    for col in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][col]
        if piv != 1:
            # Invert the pivot once; per-entry division would redo the
            # (expensive, for tower scalars) inversion for every entry.
            inv = 1 / piv
            rows[pr] = [e * inv if e else e for e in rows[pr]]
        prow = rows[pr]
        for r in range(nrows):
            if r != pr and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b if b else a for a, b in zip(rows[r], prow)]
        pivots.append(col)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def _forward_rank(rows: list[list], ncols: int) -> int:
    """Rank by fraction-free (Bareiss) forward elimination.

    Intermediate entries are exact minors of the input, so integral scalars
    never pick up denominators; the division by the previous pivot is exact
    by Sylvester's identity, which survives pivot-column skipping.
    """
    nrows = len(rows)
    rank = 0
    inv = None
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        rk = rows[rank]
        piv = rk[col]
        for i in range(rank + 1, nrows):
            ri = rows[i]
            f = ri[col]
            if f:
                if inv is None:
                    ri[col + 1 :] = [
                        piv * ri[j] - f * rk[j] for j in range(col + 1, ncols)
                    ]
                else:
                    ri[col + 1 :] = [
                        (piv * ri[j] - f * rk[j]) * inv for j in range(col + 1, ncols)
                    ]
            elif inv is None:
                ri[col + 1 :] = [piv * v if v else v for v in ri[col + 1 :]]
            else:
                scale = piv * inv
                ri[col + 1 :] = [scale * v if v else v for v in ri[col + 1 :]]
        inv = 1 / piv
        rank += 1
        if rank == nrows:
            break
    return rank


def _det(rows: list[list], n: int):
    # Fraction-free (Bareiss) elimination: every intermediate entry is an
    # exact minor of the input, so integral entries stay integral instead
    # of churning through ratio-of-minors normalizations; the division by
    # the previous pivot is exact by Sylvester's identity.
    if n == 0:
        return _F1
    negated = False
    inv = None
    for k in range(n - 1):
        pivot_row = None
        for r in range(k, n):
            if rows[r][k]:
                pivot_row = r
                break
        if pivot_row is None:
            return _F0
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            negated = not negated
        rk = rows[k]
        piv = rk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            if f:
                if inv is None:
                    ri[k + 1 :] = [piv * ri[j] - f * rk[j] for j in range(k + 1, n)]
                else:
                    ri[k + 1 :] = [
                        (piv * ri[j] - f * rk[j]) * inv for j in range(k + 1, n)
                    ]
            elif inv is None:
                ri[k + 1 :] = [piv * v if v else v for v in ri[k + 1 :]]
            else:
                scale = piv * inv
                ri[k + 1 :] = [scale * v if v else v for v in ri[k + 1 :]]
        inv = 1 / piv
    value = rows[n - 1][n - 1]
    return -value if negated else value


# -- builders ---------------------------------------------------------------


def build_jordan(n: int, eigenvalue) -> Matrix:
    """The upper Jordan block J_n(eigenvalue): eigenvalue diagonal, 1 superdiagonal."""
    lam = _coerce_entry(eigenvalue if not isinstance(eigenvalue, int) else Fraction(eigenvalue))
    data = [
        [lam if i == j else (_F1 if j == i + 1 else _F0) for j in range(n)]
        for i in range(n)
    ]
    return Matrix(data, rows=n, cols=n)


def build_FG(n: int) -> tuple[Matrix, Matrix]:
    """The n x (n+1) singular-pencil blocks F_n = [I 0] and G_n = [0 I]."""
    f = [[_F1 if j == i else _F0 for j in range(n + 1)] for i in range(n)]
    g = [[_F1 if j == i + 1 else _F0 for j in range(n + 1)] for i in range(n)]
    return Matrix(f, rows=n, cols=n + 1), Matrix(g, rows=n, cols=n + 1)


def build_M(sign, k: int) -> Matrix:
    """Direct sum of k copies of [[0, 1], [s, 0]] where s = +/-1."""
    if sign in ("+", 1):
        s = _F1
    elif sign in ("-", -1):
        s = -_F1
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    blocks = [Matrix([[0, 1], [s, 0]]) for _ in range(k)]
    return direct_sum(*blocks) if blocks else Matrix.zeros(0, 0)


def direct_sum(*matrices: Matrix) -> Matrix:
    """Block-diagonal direct sum; accepts rectangular blocks."""
    if len(matrices) == 1 and not isinstance(matrices[0], Matrix):
        matrices = tuple(matrices[0])
    rows = sum(m.rows for m in matrices)
    cols = sum(m.cols for m in matrices)
    data = [[_F0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in matrices:
        for i in range(m.rows):
            row = m.data[i]
            for j in range(m.cols):
                data[r0 + i][c0 + j] = row[j]
        r0 += m.rows
        c0 += m.cols
    return Matrix(data, rows=rows, cols=cols)


def hstack(*matrices: Matrix) -> Matrix:
    rows = matrices[0].rows
    for m in matrices:
        if m.rows != rows:
            raise ValueError("hstack requires equal row counts")
    data = [sum((list(m.data[i]) for m in matrices), []) for i in range(rows)]
    return Matrix(data, rows=rows, cols=sum(m.cols for m in matrices))


def vstack(*matrices: Matrix) -> Matrix:
    cols = matrices[0].cols
    for m in matrices:
        if m.cols != cols:
            raise ValueError("vstack requires equal column counts")
    data = [list(row) for m in matrices for row in m.data]
    return Matrix(data, rows=sum(m.rows for m in matrices), cols=cols)


def evaluate_polynomial(coefficients, m: Matrix) -> Matrix:
    """Evaluate p(M) for p given by ascending coefficients [c0, c1, ...]."""
    m._require_square("polynomial evaluation")
    n = m.rows
    coeffs = list(coefficients)
    if not coeffs:
        return Matrix.zeros(n, n)
    result = _scalar_times_identity(coeffs[-1], n)
    for c in reversed(coeffs[:-1]):
        result = result * m + _scalar_times_identity(c, n)
    return result


def _scalar_times_identity(scalar, n: int) -> Matrix:
    s = _coerce_entry(scalar if not isinstance(scalar, int) else Fraction(scalar))
    data = [[s if i == j else _F0 for j in range(n)] for i in range(n)]
    return Matrix(data, rows=n, cols=n)
