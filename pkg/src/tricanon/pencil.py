"""Kronecker canonical structure of matrix pencils, with exact witnesses.

A pencil is a pair (A, B) of equal-shape matrices acted on by
(A, B) -> (R A S, R B S) for nonsingular R, S.  Its canonical form is a
block-diagonal direct sum of:

  RightSingular k   the k x (k+1) pair (F_k, G_k)
  LeftSingular k    the (k+1) x k pair (F_k^T, G_k^T)
  InfiniteEigen k   the pair (J_k(0), I_k)
  FiniteEigen(c) k  the pair (I_k, J_k(c)); the c are the roots of
                    det(c*A - B) on the regular part

Everything is computed exactly over Q(i) (or a real radical tower over it),
and the reducing matrices R, S are returned and verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import EigenvalueOutsideField, MalformedPencil
from .field import GaussianRational, sqrt_in_field
from .matrix import Matrix, build_FG, build_jordan, direct_sum, hstack, vstack, _scalar_times_identity
from .tower import TowerElement

_F0 = Fraction(0)
_F1 = Fraction(1)

KIND_RIGHT = "RightSingular"
KIND_LEFT = "LeftSingular"
KIND_INFINITE = "InfiniteEigen"
KIND_FINITE = "FiniteEigen"

_KIND_ORDER = {KIND_RIGHT: 0, KIND_LEFT: 1, KIND_INFINITE: 2, KIND_FINITE: 3}


class PencilBlock:
    """One canonical block of a pencil decomposition."""

    __slots__ = ("kind", "size", "eigenvalue")

    def __init__(self, kind: str, size: int, eigenvalue=None):
        if kind not in _KIND_ORDER:
            raise ValueError(f"unknown block kind {kind!r}")
        if kind == KIND_FINITE:
            value = GaussianRational._coerce(eigenvalue)
            if value is None:
                raise ValueError("a finite block needs an eigenvalue in Q(i)")
            if size < 1:
                raise ValueError("a regular block has size >= 1")
        else:
            if eigenvalue is not None:
                raise ValueError(f"{kind} blocks carry no eigenvalue")
            value = None
            minimum = 0 if kind in (KIND_RIGHT, KIND_LEFT) else 1
            if size < minimum:
                raise ValueError(f"{kind} blocks have size >= {minimum}")
        self.kind = kind
        self.size = size
        self.eigenvalue = value

    def sort_key(self):
        if self.kind == KIND_FINITE:
            lam = self.eigenvalue
            return (_KIND_ORDER[self.kind], self.size, lam.modulus_squared(), lam.re, lam.im)
        return (_KIND_ORDER[self.kind], self.size, _F0, _F0, _F0)

    def label(self) -> str:
        if self.kind == KIND_FINITE:
            return f"{self.kind}({self.eigenvalue}) size {self.size}"
        return f"{self.kind} size {self.size}"

    def __eq__(self, other):
        if not isinstance(other, PencilBlock):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.size == other.size
            and self.eigenvalue == other.eigenvalue
        )

    def __hash__(self):
        return hash((self.kind, self.size, self.eigenvalue))

    def __repr__(self):
        return f"PencilBlock({self.label()!r})"


def materialize_block(block: PencilBlock) -> tuple[Matrix, Matrix]:
    """The canonical pair of matrices realizing one block."""
    k = block.size
    if block.kind == KIND_RIGHT:
        return build_FG(k)
    if block.kind == KIND_LEFT:
        f, g = build_FG(k)
        return f.transpose(), g.transpose()
    if block.kind == KIND_INFINITE:
        return build_jordan(k, 0), Matrix.identity(k)
    return Matrix.identity(k), build_jordan(k, block.eigenvalue)


def canonical_pair(blocks) -> tuple[Matrix, Matrix]:
    """Block-diagonal canonical pair for a sequence of blocks."""
    parts = [materialize_block(b) for b in blocks]
    return (
        direct_sum(*(p[0] for p in parts)) if parts else Matrix.zeros(0, 0),
        direct_sum(*(p[1] for p in parts)) if parts else Matrix.zeros(0, 0),
    )


def _block_shape(block: PencilBlock) -> tuple[int, int]:
    if block.kind == KIND_RIGHT:
        return (block.size, block.size + 1)
    if block.kind == KIND_LEFT:
        return (block.size + 1, block.size)
    return (block.size, block.size)


@dataclass(frozen=True)
class KroneckerForm:
    """Sorted canonical blocks plus verified witnesses r, s.

    The witnesses satisfy  r * A * s == canonical A-part  and
    r * B * s == canonical B-part, with r, s square nonsingular.
    """

    blocks: tuple
    r: Matrix
    s: Matrix

    def canonical_pair(self) -> tuple[Matrix, Matrix]:
        return canonical_pair(self.blocks)


# -- scalar/polynomial helpers ------------------------------------------------


def _descend_scalar(value) -> GaussianRational:
    if isinstance(value, TowerElement):
        g = value.to_gaussian()
        if g is None:
            raise EigenvalueOutsideField(
                f"coefficient {value} does not descend to Q(i)"
            )
        return g
    g = GaussianRational._coerce(value)
    if g is None:
        raise TypeError(f"unexpected scalar {value!r}")
    return g


def _char_poly(m: Matrix) -> list[GaussianRational]:
    """Monic characteristic polynomial det(xI - M), ascending coefficients."""
    n = m.rows
    cs = []
    mk = m
    for k in range(1, n + 1):
        ck = -(mk.trace()) / k
        cs.append(ck)
        if k < n:
            mk = m * (mk + _scalar_times_identity(ck, n))
    ascending = list(reversed(cs)) + [_F1]
    return [_descend_scalar(c) for c in ascending]


def _roots_sympy(cs: list[GaussianRational]):
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for k, c in enumerate(cs):
        if not c:
            continue
        coeff = sympy.Rational(c.re.numerator, c.re.denominator)
        if c.im:
            coeff = coeff + sympy.Rational(c.im.numerator, c.im.denominator) * sympy.I
        expr = expr + coeff * x**k
    _, factors = sympy.factor_list(expr, x, gaussian=True)
    roots = []
    for factor, mult in factors:
        poly = sympy.Poly(factor, x)
        degree = poly.degree()
        if degree == 0:
            continue
        if degree > 1:
            raise EigenvalueOutsideField(str(factor))
        lead, const = poly.all_coeffs()
        root = -(_gaussian_from_sympy(const) / _gaussian_from_sympy(lead))
        roots.append((root, int(mult)))
    return roots


def _gaussian_from_sympy(value) -> GaussianRational:
    import sympy

    expanded = sympy.expand(value)
    re_part, im_part = expanded.as_real_imag()
    if not (re_part.is_rational and im_part.is_rational):
        raise EigenvalueOutsideField(str(value))
    return GaussianRational(
        Fraction(int(re_part.p), int(re_part.q)),
        Fraction(int(im_part.p), int(im_part.q)),
    )


# -- root search by divisor enumeration over Z[i] -------------------------------
#
# Z[i] is Euclidean, so the rational-root theorem holds verbatim: a root
# p/q in Q(i) (lowest terms) of a polynomial with Z[i] coefficients has
# p dividing the constant term and q dividing the leading one.  Enumerating
# divisor classes of those two Gaussian integers therefore yields a COMPLETE
# candidate set; when the numbers involved are small this is much faster
# than full factorization of the polynomial, and when they are not we fall
# back to the general factorizer.

_ZI_ZERO = (0, 0)
_ZI_NORM_LIMIT = 10**14
_ZI_DIVISOR_CAP = 512
_ZI_CANDIDATE_CAP = 4096


def _zi_mul(z, w):
    a, b = z
    c, d = w
    return (a * c - b * d, a * d + b * c)


def _zi_norm(z):
    return z[0] * z[0] + z[1] * z[1]


def _round_div(num: int, den: int) -> int:
    # Nearest integer to num/den for den > 0 (ties go up); keeps the
    # Euclidean remainder norm at most half the divisor norm.
    return (2 * num + den) // (2 * den)


def _zi_divmod(z, w):
    n = _zi_norm(w)
    a, b = z
    c, d = w
    re_num = a * c + b * d
    im_num = b * c - a * d
    q = (_round_div(re_num, n), _round_div(im_num, n))
    r = (z[0] - q[0] * w[0] + q[1] * w[1], z[1] - q[0] * w[1] - q[1] * w[0])
    return q, r


def _zi_gcd(z, w):
    while w != _ZI_ZERO:
        _, r = _zi_divmod(z, w)
        z, w = w, r
    return z


def _zi_exact_div(z, w):
    n = _zi_norm(w)
    a, b = z
    c, d = w
    re_num = a * c + b * d
    im_num = b * c - a * d
    if re_num % n or im_num % n:
        return None
    return (re_num // n, im_num // n)


def _zi_prime_factors(z):
    """Gaussian prime factorization of z up to a unit, or None if too big."""
    from sympy import factorint
    from sympy.ntheory import sqrt_mod

    n = _zi_norm(z)
    if n > _ZI_NORM_LIMIT:
        return None
    factors = []
    for p, e in factorint(n).items():
        if p == 2:
            factors.append(((1, 1), e))
        elif p % 4 == 3:
            factors.append(((p, 0), e // 2))
        else:
            x = int(sqrt_mod(-1, p))
            pi = _zi_gcd((p, 0), (x, 1))
            j = 0
            rest = z
            while True:
                q = _zi_exact_div(rest, pi)
                if q is None:
                    break
                rest = q
                j += 1
            factors.append((pi, j))
            if e - j:
                factors.append(((pi[0], -pi[1]), e - j))
    return factors


def _zi_divisor_classes(z):
    """All divisors of z up to units, or None when enumeration is too big."""
    factors = _zi_prime_factors(z)
    if factors is None:
        return None
    count = 1
    for _, e in factors:
        count *= e + 1
        if count > _ZI_DIVISOR_CAP:
            return None
    divisors = [(1, 0)]
    for pi, e in factors:
        extended = []
        for d in divisors:
            current = d
            for k in range(e + 1):
                extended.append(current)
                if k < e:
                    current = _zi_mul(current, pi)
        divisors = extended
    return divisors


def _deflate(ascending, root):
    """(value at root, quotient coefficients) of division by (x - root)."""
    acc = GaussianRational(0)
    quotient = [None] * (len(ascending) - 1)
    for k in range(len(ascending) - 1, 0, -1):
        acc = acc * root + ascending[k]
        quotient[k - 1] = acc
    value = acc * root + ascending[0]
    return value, quotient


def _roots_linear_quadratic(cs):
    """Roots of a degree-1 or degree-2 polynomial with nonzero constant term."""
    if len(cs) == 2:
        return [(-cs[0] / cs[1], 1)]
    a, b, c = cs[2], cs[1], cs[0]
    disc = b * b - 4 * a * c
    root_disc = sqrt_in_field(disc)
    if root_disc is None:
        raise EigenvalueOutsideField(
            f"quadratic with discriminant {disc} does not split over Q(i)"
        )
    if not root_disc:
        return [(-b / (2 * a), 2)]
    return [((-b + root_disc) / (2 * a), 1), ((-b - root_disc) / (2 * a), 1)]


def _roots_by_divisors(cs):
    """Try the complete Z[i] divisor-candidate search; None means give up."""
    from math import lcm

    scale = 1
    for c in cs:
        scale = lcm(scale, c.re.denominator, c.im.denominator)
    integral = [(int(c.re * scale), int(c.im * scale)) for c in cs]
    low_divisors = _zi_divisor_classes(integral[0])
    if low_divisors is None:
        return None
    high_divisors = _zi_divisor_classes(integral[-1])
    if high_divisors is None:
        return None
    if len(low_divisors) * len(high_divisors) > _ZI_CANDIDATE_CAP:
        return None
    candidates = set()
    for p in low_divisors:
        numerator = GaussianRational(Fraction(p[0]), Fraction(p[1]))
        for q in high_divisors:
            base = numerator / GaussianRational(Fraction(q[0]), Fraction(q[1]))
            rotated = GaussianRational(-base.im, base.re)
            candidates.update((base, -base, rotated, -rotated))
    poly = list(cs)
    roots = []
    for candidate in candidates:
        if len(poly) <= 3:
            break
        while len(poly) > 3:
            value, quotient = _deflate(poly, candidate)
            if value:
                break
            poly = quotient
            roots.append((candidate, 1))
    if len(poly) > 3:
        # The candidate set is complete, so the residual polynomial has no
        # roots at all in Q(i).
        raise EigenvalueOutsideField(
            f"polynomial of degree {len(poly) - 1} has no roots in Q(i)"
        )
    if len(poly) > 1:
        roots.extend(_roots_linear_quadratic(poly))
    return roots


def _poly_normalize(cs):
    trimmed = list(cs)
    while trimmed and not trimmed[-1]:
        trimmed.pop()
    return trimmed


def _poly_monic(cs):
    lead = cs[-1]
    if lead == GaussianRational(1):
        return cs
    return [c / lead for c in cs]


def _poly_mod(a, b):
    """Remainder of a by b (ascending coefficients, b nonzero)."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(r) - 1 >= db and r:
        factor = r[-1] / lead
        shift = len(r) - 1 - db
        for k in range(db + 1):
            r[shift + k] = r[shift + k] - factor * b[k]
        r = _poly_normalize(r[:-1])
    return r


def _poly_gcd(a, b):
    a = _poly_normalize(a)
    b = _poly_normalize(b)
    while b:
        a, b = b, _poly_mod(a, b)
        if b:
            b = _poly_monic(b)
    return _poly_monic(a)


def _squarefree_part(cs):
    """The product of the distinct irreducible factors of cs, monic."""
    derivative = [k * c for k, c in enumerate(cs)][1:]
    g = _poly_gcd(cs, derivative)
    if len(g) == 1:
        return _poly_monic(list(cs))
    quotient, remainder = _poly_divmod(cs, g)
    if remainder:
        raise ArithmeticError("square-free reduction failed")
    return _poly_monic(quotient)


def _poly_divmod(a, b):
    q = [GaussianRational(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(r) - 1 >= db and r:
        factor = r[-1] / lead
        shift = len(r) - 1 - db
        q[shift] = factor
        for k in range(db + 1):
            r[shift + k] = r[shift + k] - factor * b[k]
        r = _poly_normalize(r[:-1])
    return q, r


def _roots_high_degree(cs):
    # Square-free reduction first: repeated eigenvalues are the norm in
    # canonical pencils, and the reduced polynomial keeps the divisor
    # candidate sets small.
    reduced = _squarefree_part(cs)
    if len(reduced) == len(cs):
        roots = _roots_by_divisors(cs)
        if roots is None:
            return _roots_sympy(cs)
        return roots
    if len(reduced) <= 3:
        distinct = [root for root, _ in _roots_linear_quadratic(reduced)]
    else:
        found = _roots_by_divisors(reduced)
        if found is None:
            found = _roots_sympy(reduced)
        distinct = [root for root, _ in found]
    roots = []
    poly = list(cs)
    for root in distinct:
        mult = 0
        while len(poly) > 1:
            value, quotient = _deflate(poly, root)
            if value:
                break
            poly = quotient
            mult += 1
        roots.append((root, mult))
    if len(poly) > 1:
        raise EigenvalueOutsideField(
            f"polynomial of degree {len(poly) - 1} has no roots in Q(i)"
        )
    return roots


def _roots_in_field(coefficients) -> list[tuple[GaussianRational, int]]:
    """All roots with multiplicity of an ascending-coefficient polynomial.

    Raises EigenvalueOutsideField if the polynomial has an irreducible
    factor of degree >= 2 over Q(i); otherwise the multiplicities sum to
    the degree.  Roots are returned sorted by (modulus squared, re, im).
    """
    cs = [_descend_scalar(c) for c in coefficients]
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        raise ValueError("the zero polynomial has no root multiset")
    degree = len(cs) - 1
    zero_mult = 0
    while not cs[0]:
        cs.pop(0)
        zero_mult += 1
    raw = []
    if zero_mult:
        raw.append((GaussianRational(0), zero_mult))
    rest_degree = len(cs) - 1
    if rest_degree in (1, 2):
        raw.extend(_roots_linear_quadratic(cs))
    elif rest_degree >= 3:
        raw.extend(_roots_high_degree(cs))
    merged: dict[GaussianRational, int] = {}
    for lam, mult in raw:
        merged[lam] = merged.get(lam, 0) + mult
    out = sorted(
        merged.items(), key=lambda t: (t[0].modulus_squared(), t[0].re, t[0].im)
    )
    if sum(mult for _, mult in out) != degree:
        raise MalformedPencil("root multiplicities do not sum to the degree")
    return out


# -- Jordan form ---------------------------------------------------------------


def _apply(m: Matrix, vec) -> tuple:
    out = []
    for i in range(m.rows):
        acc = _F0
        row = m.data[i]
        for j, v in enumerate(vec):
            if v:
                acc = acc + row[j] * v
        out.append(acc)
    return tuple(out)


class _Span:
    """Incremental linear-independence tracker over any exact scalar field."""

    __slots__ = ("rows", "pivots", "length")

    def __init__(self, length: int):
        self.rows = []
        self.pivots = []
        self.length = length

    def try_add(self, vec) -> bool:
        """Add vec to the span; True if it was independent of the span."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        for j in range(self.length):
            if v[j]:
                piv = v[j]
                v = [a / piv for a in v]
                self.rows.append(v)
                self.pivots.append(j)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def _jordan_chains(m: Matrix, lam: GaussianRational, mult: int) -> list[list[tuple]]:
    """Jordan chains of M for eigenvalue lam, covering its generalized eigenspace.

    Each chain is returned bottom-up: [N^{h-1} t, ..., N t, t] for a chain
    top t of height h, where N = M - lam*I.
    """
    n = m.rows
    nil = m - _scalar_times_identity(lam, n)
    kernels = [[]]
    power = Matrix.identity(n)
    while len(kernels[-1]) < mult:
        power = power * nil
        basis = power.right_kernel()
        if len(basis) <= len(kernels[-1]):
            raise MalformedPencil(
                "generalized eigenspace stopped growing before reaching "
                "the algebraic multiplicity"
            )
        kernels.append(basis)
    heights = len(kernels) - 1
    carried: list[tuple] = []
    tops: list[tuple[tuple, int]] = []
    for h in range(heights, 0, -1):
        span = _Span(n)
        for v in kernels[h - 1]:
            span.try_add(v)
        for v in carried:
            span.try_add(v)
        new_tops = []
        for v in kernels[h]:
            if span.try_add(v):
                new_tops.append(v)
        tops.extend((v, h) for v in new_tops)
        carried = [_apply(nil, v) for v in carried] + [_apply(nil, v) for v in new_tops]
    chains = []
    for top, h in tops:
        chain = [top]
        for _ in range(h - 1):
            chain.append(_apply(nil, chain[-1]))
        chain.reverse()
        chains.append(chain)
    if sum(len(c) for c in chains) != mult:
        raise MalformedPencil("chain sizes do not sum to the algebraic multiplicity")
    return chains


def jordan_form(m: Matrix) -> tuple[tuple, Matrix]:
    """Exact Jordan decomposition over Q(i).

    Returns (blocks, P) where blocks is a tuple of (eigenvalue, size)
    pairs, sorted by eigenvalue then size, and P is nonsingular with
    P^{-1} M P equal to the direct sum of the corresponding Jordan blocks.
    Raises EigenvalueOutsideField when the spectrum does not lie in Q(i).
    """
    m._require_square("Jordan decomposition")
    n = m.rows
    if n == 0:
        return ((), Matrix.identity(0))
    roots = _roots_in_field(_char_poly(m))
    blocks = []
    columns = []
    for lam, mult in roots:
        chains = _jordan_chains(m, lam, mult)
        chains.sort(key=len)
        for chain in chains:
            blocks.append((lam, len(chain)))
            columns.extend(chain)
    p = Matrix.from_cols(columns, n)
    j = direct_sum(*(build_jordan(size, lam) for lam, size in blocks))
    if p.inverse() * m * p != j:
        raise MalformedPencil("similarity witness does not reproduce the Jordan form")
    return tuple(blocks), p


# -- pencil reduction ----------------------------------------------------------


def _sample_points(count: int) -> list[Fraction]:
    pts = [Fraction(0)]
    k = 1
    while len(pts) < count:
        pts.append(Fraction(k))
        if len(pts) < count:
            pts.append(Fraction(-k))
        k += 1
    return pts[:count]


def _staircase_matrix(a: Matrix, b: Matrix, d: int) -> Matrix:
    """Stacked system whose kernel holds degree-d polynomial kernel chains.

    Row blocks encode B x_0 = 0;  A x_{j-1} - B x_j = 0 for j = 1..d;
    A x_d = 0, over the unknowns (x_0, ..., x_d).
    """
    m, n = a.rows, a.cols
    data = [[_F0] * ((d + 1) * n) for _ in range((d + 2) * m)]

    def put(block, r0, c0, negate=False):
        for i in range(block.rows):
            row = block.data[i]
            for j in range(block.cols):
                if row[j]:
                    data[r0 + i][c0 + j] = -row[j] if negate else row[j]

    put(b, 0, 0)
    for j in range(1, d + 1):
        put(a, j * m, (j - 1) * n)
        put(b, j * m, j * n, negate=True)
    put(a, (d + 1) * m, d * n)
    return Matrix(data, rows=(d + 2) * m, cols=(d + 1) * n)


def _complete_cols(vectors, n: int) -> Matrix:
    """Nonsingular n x n matrix whose leading columns are the given vectors."""
    span = _Span(n)
    cols = list(vectors)
    for v in cols:
        if not span.try_add(v):
            raise MalformedPencil("chain vectors are linearly dependent")
    for i in range(n):
        if len(cols) == n:
            break
        e = tuple(_F1 if k == i else _F0 for k in range(n))
        if span.try_add(e):
            cols.append(e)
    if len(cols) != n:
        raise MalformedPencil("basis completion failed")
    return Matrix.from_cols(cols, n)


def _solve_coupling(a12, a22, b12, b22, eps):
    """Solve F X + Y A22 = -A12 and G X + Y B22 = -B12 for X, Y.

    F, G are the eps x (eps+1) singular blocks, so (F X)[i] = X[i] and
    (G X)[i] = X[i+1]; the system is linear in the entries of X and Y and
    is always consistent once eps is the pencil's minimal column index.
    """
    q = a12.cols
    p = a22.rows
    if q == 0 or eps == 0:
        x = Matrix.zeros(eps + 1, q)
        # With no equations, X = 0 and Y = 0 already decouple the blocks.
        if eps == 0:
            return x, Matrix.zeros(0, p)
    total = (eps + 1) * q + eps * p
    yoff = (eps + 1) * q
    rows = []
    rhs = []
    for source, x_shift in ((a12, 0), (b12, 1)):
        coupling = a22 if x_shift == 0 else b22
        for i in range(eps):
            for j in range(q):
                row = [_F0] * total
                row[(i + x_shift) * q + j] = _F1
                for l in range(p):
                    value = coupling.data[l][j]
                    if value:
                        row[yoff + i * p + l] = value
                rows.append(row)
                rhs.append([-source.data[i][j]])
    if not rows:
        return Matrix.zeros(eps + 1, q), Matrix.zeros(eps, p)
    system = Matrix(rows, rows=len(rows), cols=total)
    solution = system.solve_right(Matrix(rhs, rows=len(rhs), cols=1))
    if solution is None:
        raise MalformedPencil("block coupling system is inconsistent")
    flat = [solution.data[k][0] for k in range(total)]
    x = Matrix(
        [[flat[i * q + j] for j in range(q)] for i in range(eps + 1)],
        rows=eps + 1,
        cols=q,
    )
    y = Matrix(
        [[flat[yoff + i * p + l] for l in range(p)] for i in range(eps)],
        rows=eps,
        cols=p,
    )
    return x, y


def _staircase_head(a: Matrix, b: Matrix):
    """Reduce the leading right-singular block of minimal index to (F, G) form.

    Returns (eps, a1, b1, r1, s1) with a1 = r1 A s1 and b1 = r1 B s1 carrying
    the canonical eps x (eps+1) head in their top-left corner and zeros below
    it; the trailing block of (a1, b1) is a pencil of the remaining structure.
    """
    m, n = a.rows, a.cols
    kernel = None
    eps = 0
    for eps in range(n + 1):
        kernel = _staircase_matrix(a, b, eps).right_kernel()
        if kernel:
            break
    if not kernel:
        raise MalformedPencil("rank-deficient pencil has no polynomial kernel")
    vec = kernel[0]
    xs = [tuple(vec[j * n : (j + 1) * n]) for j in range(eps + 1)]
    us = []
    for j in range(1, eps + 1):
        u = _apply(a, xs[j - 1])
        if u != _apply(b, xs[j]):
            raise MalformedPencil("staircase chain fails its defining relations")
        us.append(u)
    s1 = _complete_cols(xs, n)
    r1 = _complete_cols(us, m).inverse()
    a1 = r1 * a * s1
    b1 = r1 * b * s1
    f, g = build_FG(eps)
    if a1.block(0, eps, 0, eps + 1) != f or b1.block(0, eps, 0, eps + 1) != g:
        raise MalformedPencil("staircase head is not in canonical form")
    for i in range(eps, m):
        for j in range(eps + 1):
            if a1.data[i][j] or b1.data[i][j]:
                raise MalformedPencil("staircase elimination left residue below the head")
    return eps, a1, b1, r1, s1


def _extract_right(a: Matrix, b: Matrix):
    """Split off one right-singular block of minimal index."""
    m, n = a.rows, a.cols
    eps, a1, b1, r1, s1 = _staircase_head(a, b)
    a12 = a1.block(0, eps, eps + 1, n)
    b12 = b1.block(0, eps, eps + 1, n)
    a22 = a1.block(eps, m, eps + 1, n)
    b22 = b1.block(eps, m, eps + 1, n)
    x, y = _solve_coupling(a12, a22, b12, b22, eps)
    s2 = vstack(
        hstack(Matrix.identity(eps + 1), x),
        hstack(Matrix.zeros(n - eps - 1, eps + 1), Matrix.identity(n - eps - 1)),
    )
    r2 = vstack(
        hstack(Matrix.identity(eps), y),
        hstack(Matrix.zeros(m - eps, eps), Matrix.identity(m - eps)),
    )
    blocks, r3, s3 = _decompose(a22, b22)
    r_total = direct_sum(Matrix.identity(eps), r3) * r2 * r1
    s_total = s1 * s2 * direct_sum(Matrix.identity(eps + 1), s3)
    return [PencilBlock(KIND_RIGHT, eps)] + blocks, r_total, s_total


def _regular_decompose(a: Matrix, b: Matrix, c):
    """Decompose a regular pencil, given c with det(c*A - B) != 0."""
    n = a.rows
    e = (c * a - b).inverse()
    k = e * a
    jordan_blocks, p = jordan_form(k)
    pinv = p.inverse()
    r_parts = []
    s_parts = []
    blocks = []
    c_scalar = GaussianRational._coerce(c)
    for alpha, size in jordan_blocks:
        jk = build_jordan(size, alpha)
        if alpha:
            # (J_k(alpha), c J_k(alpha) - I) -> (I, c I - J_k(alpha)^{-1}),
            # whose single eigenvalue is the pencil eigenvalue c - 1/alpha.
            lam = c_scalar - GaussianRational(1) / alpha
            jinv = jk.inverse()
            t = _scalar_times_identity(c_scalar, size) - jinv
            inner_blocks, q = jordan_form(t)
            if len(inner_blocks) != 1 or inner_blocks[0] != (lam, size):
                raise MalformedPencil("resolvent block is not a single Jordan cell")
            r_parts.append(q.inverse() * jinv)
            s_parts.append(q)
            blocks.append(PencilBlock(KIND_FINITE, size, lam))
        else:
            # (J_k(0), c J_k(0) - I) -> (J_k(0) W^{-1}, I) with W invertible;
            # the product is nilpotent of full index: an infinite block.
            w = c_scalar * jk - Matrix.identity(size)
            winv = w.inverse()
            nilpotent = jk * winv
            inner_blocks, q = jordan_form(nilpotent)
            if len(inner_blocks) != 1 or inner_blocks[0][1] != size or inner_blocks[0][0]:
                raise MalformedPencil("nilpotent block is not a single Jordan cell")
            r_parts.append(q.inverse())
            s_parts.append(winv * q)
            blocks.append(PencilBlock(KIND_INFINITE, size))
    r = direct_sum(*r_parts) * pinv * e if r_parts else pinv * e
    s = p * direct_sum(*s_parts) if s_parts else p
    return blocks, r, s


def _decompose(a: Matrix, b: Matrix):
    """Recursive reduction; returns (blocks, r, s) with r A s block-diagonal."""
    m, n = a.rows, a.cols
    if n == 0:
        return (
            [PencilBlock(KIND_LEFT, 0)] * m,
            Matrix.identity(m),
            Matrix.identity(0),
        )
    if m == 0:
        return (
            [PencilBlock(KIND_RIGHT, 0)] * n,
            Matrix.identity(0),
            Matrix.identity(n),
        )
    samples = _sample_points(max(m, n) + 1)
    target = min(m, n)
    if m == n:
        for t in samples:
            if (t * a - b).det():
                return _regular_decompose(a, b, t)
        # det(tA - B) has degree <= n and vanished at n+1 points, so it is
        # identically zero and the normal rank is at most n - 1.
        target = n - 1
    # Normal rank: the maximum of rank(tA - B) over enough sample points to
    # defeat every vanishing minor polynomial.
    normal_rank = 0
    for t in samples:
        normal_rank = max(normal_rank, (t * a - b).rank())
        if normal_rank == target:
            break
    if normal_rank < n:
        return _extract_right(a, b)
    # Only left-singular structure remains; reduce the transposed pencil and
    # pull the result back.
    blocks_t, rt, st = _decompose(a.transpose(), b.transpose())
    blocks = []
    for blk in blocks_t:
        if blk.kind == KIND_RIGHT:
            blocks.append(PencilBlock(KIND_LEFT, blk.size))
        elif blk.kind == KIND_LEFT:
            blocks.append(PencilBlock(KIND_RIGHT, blk.size))
        else:
            blocks.append(blk)
    # Transposing the block diagonal transposes each slot; the square
    # regular slots need the reversal similarity to restore Jordan
    # orientation, while singular slots are already each other's canonical
    # transposes.
    fix_rows = []
    fix_cols = []
    for blk in blocks:
        rsz, csz = _block_shape(blk)
        if blk.kind in (KIND_FINITE, KIND_INFINITE):
            reversal = Matrix.identity(rsz).permute_rows(list(reversed(range(rsz))))
            fix_rows.append(reversal)
            fix_cols.append(reversal)
        else:
            fix_rows.append(Matrix.identity(rsz))
            fix_cols.append(Matrix.identity(csz))
    fr = direct_sum(*fix_rows) if fix_rows else Matrix.identity(m)
    fc = direct_sum(*fix_cols) if fix_cols else Matrix.identity(n)
    return blocks, fr * st.transpose(), rt.transpose() * fc


# -- structure-only reduction ----------------------------------------------------
#
# Canonicalizers consume just the multiset of blocks, never the reducing
# matrices, and the block structure is much cheaper than witnesses: the
# regular part is fully determined by the pencil polynomial det(tA - B)
# together with kernel dimensions of resolvent powers, so no Jordan bases,
# no basis completions and no witness products have to be formed.  Scalars
# are rescaled to (Gaussian or tower) integers along the way, which keeps
# the exact integer arithmetic near its minimal bit size.


def _entry_components(value):
    """The Gaussian-rational coefficients making up one matrix entry."""
    if isinstance(value, TowerElement):
        return value.coeffs.values()
    g = GaussianRational._coerce(value)
    if g is None:
        raise TypeError(f"unexpected matrix entry {value!r}")
    return (g,)


def _primitive_scale(m: Matrix) -> tuple[Matrix, Fraction]:
    """Positive rational multiple of m with coprime integer components.

    Returns (scaled matrix, factor applied); ranks and kernels are unchanged
    and the entries become denominator-free with no common integer content.
    """
    denominator = 1
    for row in m.data:
        for v in row:
            if v:
                for g in _entry_components(v):
                    denominator = lcm(denominator, g._d)
    content = 0
    for row in m.data:
        for v in row:
            if v:
                for g in _entry_components(v):
                    q = denominator // g._d
                    content = gcd(content, g._a * q, g._b * q)
    factor = Fraction(denominator, content or 1)
    if factor == 1:
        return m, factor
    return factor * m, factor


def _strip(m: Matrix) -> Matrix:
    return _primitive_scale(m)[0]


def _interpolate_exact(points, values):
    """Newton interpolation over Q(i) or a radical tower; ascending coefficients."""
    count = len(points)
    newton = []
    level = list(values)
    newton.append(level[0])
    for depth in range(1, count):
        level = [
            (level[i + 1] - level[i]) / (points[i + depth] - points[i])
            for i in range(len(level) - 1)
        ]
        newton.append(level[0])
    poly = [GaussianRational(0)]
    basis = [GaussianRational(1)]
    for j, coeff in enumerate(newton):
        while len(poly) < len(basis):
            poly.append(GaussianRational(0))
        for k, bk in enumerate(basis):
            term = coeff * bk
            if term:
                poly[k] = poly[k] + term
        if j + 1 < count:
            shifted = [GaussianRational(0)] + basis
            scaled = [-(points[j]) * bk for bk in basis] + [GaussianRational(0)]
            basis = [u + v for u, v in zip(shifted, scaled)]
    return poly


def _pencil_poly(a: Matrix, b: Matrix):
    """(coefficients, t0) for det(t*A - B), or (None, None) when identically zero.

    The coefficients are returned over Q(i), ascending and trimmed, with t0 a
    sample point where the determinant does not vanish.  A leading radical
    coefficient divides out first — the monic polynomial is what carries the
    eigenvalues — so EigenvalueOutsideField is raised exactly when a root
    falls outside Q(i).
    """
    n = a.rows
    points = _sample_points(n + 1)
    values = [(t * a - b).det() for t in points]
    t0 = next((t for t, v in zip(points, values) if v), None)
    if t0 is None:
        return None, None
    coefficients = _interpolate_exact(points, values)
    while coefficients and not coefficients[-1]:
        coefficients.pop()
    lead = coefficients[-1]
    if isinstance(lead, TowerElement):
        inv = lead.invert()
        coefficients = [inv * c for c in coefficients]
    return [_descend_scalar(c) for c in coefficients], t0


def _strip_row(row):
    """The row rescaled by a positive rational to coprime integer components."""
    denominator = 1
    for v in row:
        if v:
            for g in _entry_components(v):
                denominator = lcm(denominator, g._d)
    content = 0
    for v in row:
        if v:
            for g in _entry_components(v):
                q = denominator // g._d
                content = gcd(content, g._a * q, g._b * q)
    factor = Fraction(denominator, content or 1)
    if factor == 1:
        return row
    return [factor * v if v else v for v in row]


def _strip_rows(m: Matrix) -> Matrix:
    """Each row rescaled to coprime form; ranks are unchanged, and the row
    scaling commutes with further right-multiplication."""
    return Matrix([_strip_row(list(row)) for row in m.data], rows=m.rows, cols=m.cols)


def _nilpotent_block_sizes(w: Matrix, mult: int, d1: int) -> list[int]:
    """Jordan sizes at one eigenvalue from kernel dimensions of powers of w.

    Stops as soon as the kernel increment drops to 1: from then on a single
    chain accounts for all remaining multiplicity, so the largest block size
    is forced and the expensive high powers are never formed.
    """
    n = w.rows
    increments = [d1]
    power = w
    while True:
        total = sum(increments)
        if total == mult:
            break
        if total > mult:
            raise MalformedPencil(
                "kernel growth of resolvent powers does not match "
                "the algebraic multiplicity"
            )
        if increments[-1] == 1:
            # A single chain keeps growing; its remaining length is fixed.
            increments.extend([1] * (mult - total))
            break
        power = _strip_rows(power * w)
        step = n - power.rank() - total
        if step <= 0 or step > increments[-1]:
            raise MalformedPencil(
                "kernel dimensions of resolvent powers are not concave"
            )
        increments.append(step)
    sizes = []
    for j, c in enumerate(increments, start=1):
        following = increments[j] if j < len(increments) else 0
        sizes.extend([j] * (c - following))
    return sizes


def _regular_structure(a: Matrix, b: Matrix, coefficients, t0, gamma: Fraction):
    """Blocks of a regular pencil from rank data alone.

    ``coefficients`` is det(t*A - B) over Q(i) (ascending, trimmed, nonzero),
    t0 satisfies det(t0*A - B) != 0, and gamma rescales each eigenvalue of
    (A, B) back to the pencil this one was derived from.
    """
    n = a.rows
    degree = len(coefficients) - 1
    jobs = list(_roots_in_field(coefficients))
    if degree < n:
        jobs.append((None, n - degree))
    cache: dict = {}

    def resolvent(lam):
        # E (lam A - B) with E = (t0 A - B)^{-1} shares each kernel-power
        # dimension with the Jordan structure at lam; E A plays that role
        # for the infinite eigenvalue.
        if "e" not in cache:
            cache["e"] = (t0 * a - b).inverse()
        target = a if lam is None else lam * a - b
        return _strip(cache["e"] * target)

    blocks = []
    for lam, mult in jobs:
        if mult == 1:
            sizes = [1]
        else:
            base = a if lam is None else _strip(lam * a - b)
            d1 = n - base.rank()
            if d1 < 1 or d1 > mult:
                raise MalformedPencil(
                    "geometric multiplicity outside its algebraic bound"
                )
            if d1 == mult:
                sizes = [1] * mult
            elif d1 == 1:
                sizes = [mult]
            elif mult - d1 == 1:
                sizes = [2] + [1] * (d1 - 1)
            else:
                sizes = _nilpotent_block_sizes(resolvent(lam), mult, d1)
        for size in sizes:
            if lam is None:
                blocks.append(PencilBlock(KIND_INFINITE, size))
            else:
                blocks.append(PencilBlock(KIND_FINITE, size, lam * gamma))
    return blocks


def _structure_decompose(a: Matrix, b: Matrix, gamma: Fraction) -> list:
    """Recursive reduction mirroring _decompose, returning blocks only."""
    m, n = a.rows, a.cols
    if n == 0:
        return [PencilBlock(KIND_LEFT, 0)] * m
    if m == 0:
        return [PencilBlock(KIND_RIGHT, 0)] * n
    a, fa = _primitive_scale(a)
    b, fb = _primitive_scale(b)
    gamma = gamma * fa / fb
    if m == n:
        coefficients, t0 = _pencil_poly(a, b)
        if coefficients is not None:
            return _regular_structure(a, b, coefficients, t0, gamma)
        # det(tA - B) vanished identically, so the normal rank is below n.
        target = n - 1
    else:
        target = min(m, n)
    normal_rank = 0
    for t in _sample_points(max(m, n) + 1):
        normal_rank = max(normal_rank, (t * a - b).rank())
        if normal_rank == target:
            break
    if normal_rank < n:
        eps, a1, b1, _, _ = _staircase_head(a, b)
        tail = _structure_decompose(
            a1.block(eps, m, eps + 1, n), b1.block(eps, m, eps + 1, n), gamma
        )
        return [PencilBlock(KIND_RIGHT, eps)] + tail
    # Only left-singular structure remains; regular blocks are transpose
    # invariant while the singular kinds swap.
    flipped = _structure_decompose(a.transpose(), b.transpose(), gamma)
    swap = {KIND_RIGHT: KIND_LEFT, KIND_LEFT: KIND_RIGHT}
    return [
        PencilBlock(swap[blk.kind], blk.size) if blk.kind in swap else blk
        for blk in flipped
    ]


_BLOCKS_CACHE: dict = {}
_BLOCKS_CACHE_LIMIT = 16


def _kronecker_blocks(a: Matrix, b: Matrix) -> tuple:
    """Sorted canonical blocks of the pencil (A, B), without witnesses.

    Agrees with kronecker_decompose(a, b).blocks at a fraction of the cost;
    canonicalization only needs the block multiset.  Matrices are immutable,
    so results are memoized by content: the canonicalizers that offer several
    output dialects ask for the same decomposition once per dialect.
    """
    if a.shape != b.shape:
        raise ValueError(f"pencil matrices must share a shape: {a.shape} vs {b.shape}")
    key = (a.data, b.data)
    found = _BLOCKS_CACHE.get(key)
    if found is None:
        blocks = _structure_decompose(a, b, _F1)
        found = tuple(sorted(blocks, key=PencilBlock.sort_key))
        if len(_BLOCKS_CACHE) >= _BLOCKS_CACHE_LIMIT:
            _BLOCKS_CACHE.clear()
        _BLOCKS_CACHE[key] = found
    return found


def kronecker_decompose(a: Matrix, b: Matrix) -> KroneckerForm:
    """Exact Kronecker canonical form of the pencil (A, B) with witnesses.

    The returned blocks are sorted (singular before regular, then by size
    and eigenvalue) and the witnesses are verified against the canonical
    pair entry by entry before returning.
    """
    if a.shape != b.shape:
        raise ValueError(f"pencil matrices must share a shape: {a.shape} vs {b.shape}")
    blocks, r, s = _decompose(a, b)
    order = sorted(range(len(blocks)), key=lambda i: blocks[i].sort_key())
    row_groups = []
    col_groups = []
    r0 = c0 = 0
    for blk in blocks:
        rsz, csz = _block_shape(blk)
        row_groups.append(list(range(r0, r0 + rsz)))
        col_groups.append(list(range(c0, c0 + csz)))
        r0 += rsz
        c0 += csz
    row_order = [idx for i in order for idx in row_groups[i]]
    col_order = [idx for i in order for idx in col_groups[i]]
    r_final = r.permute_rows(row_order)
    s_final = s.permute_cols(col_order)
    sorted_blocks = tuple(blocks[i] for i in order)
    ca, cb = canonical_pair(sorted_blocks)
    if r_final * a * s_final != ca or r_final * b * s_final != cb:
        raise MalformedPencil("witnesses do not reproduce the canonical pair")
    if not r_final.det() or not s_final.det():
        raise MalformedPencil("pencil reduction produced a singular witness")
    return KroneckerForm(sorted_blocks, r_final, s_final)


def regular_eigenvalues(a: Matrix, b: Matrix) -> tuple:
    """Roots of det(t*B - A) with multiplicities, for a regular pencil.

    Returns a tuple of (eigenvalue, multiplicity) pairs sorted by
    (modulus squared, re, im); the multiplicities sum to the degree of
    det(t*B - A).  Raises MalformedPencil when the pencil is singular and
    EigenvalueOutsideField when a root lies outside Q(i).
    """
    if a.shape != b.shape:
        raise ValueError(f"pencil matrices must share a shape: {a.shape} vs {b.shape}")
    a._require_square("regular pencil spectrum")
    n = a.rows
    points = _sample_points(n + 1)
    values = [_descend_tower_det((t * b - a).det()) for t in points]
    if not any(values):
        raise MalformedPencil("pencil is singular: det(t*B - A) vanishes identically")
    coefficients = _interpolate(points, values)
    return tuple(_roots_in_field(coefficients))


def _descend_tower_det(value):
    return _descend_scalar(value)


def _interpolate(points, values) -> list[GaussianRational]:
    """Exact polynomial interpolation; ascending coefficients."""
    count = len(points)
    newton = []
    level = [GaussianRational._coerce(v) if not isinstance(v, GaussianRational) else v
             for v in values]
    newton.append(level[0])
    for depth in range(1, count):
        level = [
            (level[i + 1] - level[i]) / (points[i + depth] - points[i])
            for i in range(len(level) - 1)
        ]
        newton.append(level[0])
    poly = [GaussianRational(0)]
    basis = [GaussianRational(1)]
    for j, coeff in enumerate(newton):
        while len(poly) < len(basis):
            poly.append(GaussianRational(0))
        for k, bk in enumerate(basis):
            poly[k] = poly[k] + coeff * bk
        if j + 1 < count:
            shifted = [GaussianRational(0)] + basis
            scaled = [-(points[j]) * bk for bk in basis] + [GaussianRational(0)]
            basis = [u + v for u, v in zip(shifted, scaled)]
    return poly
