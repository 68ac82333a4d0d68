"""Canonical tridiagonal summands: descriptors, constructors, and structural transforms.

Each canonical family is identified by a :class:`SummandDescriptor` carrying the
family tag, the block size, and the scalar parameters.  ``materialize`` turns a
descriptor into the explicit tridiagonal matrix (or pair of matrices) it names.
The module also provides the structural transforms used throughout the library:
the row/column rearrangement ``p_transform``, the symmetric/skew splitting of a
square matrix, the Cartesian (Hermitian) splitting, and the Möbius parameter
maps that link the single-matrix families to the pair families.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass, field as _dc_field
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import ParseError
from .field import (
    GaussianRational,
    I_UNIT,
    ONE,
    ZERO,
    format_scalar,
    lex_key,
    modulus_squared,
    parse_scalar,
    rational_sqrt,
)
from .matrix import Matrix, build_M, direct_sum
from .tower import TowerContext, TowerElement, squarefree_split


class _Infinity:
    """Sentinel for the infinite parameter value (written ``inf``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __str__(self) -> str:
        return "inf"


INFINITY = _Infinity()

#: Fixed family order; also the primary sort key for descriptors.
FAMILIES: Tuple[str, ...] = (
    "CM1",
    "CM2",
    "CM3",
    "CMI1",
    "CMI2",
    "SSS1N",
    "SS2N",
    "LYG",
    "NN_IDENT",
    "SSNEW",
    "SC1",
    "SC2",
    "SC3",
    "CC1",
    "CC23",
    "HE1",
    "HE2",
)

_FAMILY_INDEX = {name: i for i, name in enumerate(FAMILIES)}

#: Families whose materialization is a pair of matrices (all others yield one).
PAIR_FAMILIES = frozenset(
    {
        "SSS1N",
        "SS2N",
        "LYG",
        "NN_IDENT",
        "SSNEW",
        "SC1",
        "SC2",
        "SC3",
        "CC1",
        "CC23",
        "HE1",
        "HE2",
    }
)

#: Families whose sign ambiguity may be unresolved (sign_determined=False legal).
SIGN_AMBIGUOUS_FAMILIES = frozenset({"CMI2", "HE1", "HE2"})

#: Valid relation tags for CanonicalDecomposition.
RELATIONS = ("congruence", "star_congruence", "pair_congruence", "pair_star_congruence")


def _scalar(value) -> GaussianRational:
    coerced = GaussianRational._coerce(value)
    if coerced is None:
        raise TypeError(f"expected a scalar over the Gaussian rationals, got {value!r}")
    return coerced


@dataclass(frozen=True)
class SummandDescriptor:
    """One canonical summand: family tag, size, and scalar parameters."""

    family: str
    size: int
    lam: Optional[GaussianRational] = None
    mu: Optional[GaussianRational] = None
    eps: Optional[int] = None
    c: Union[GaussianRational, _Infinity, None] = None
    sign_determined: bool = True

    def __post_init__(self):
        if self.family not in _FAMILY_INDEX:
            raise ValueError(f"unknown family {self.family!r}")
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"size must be a positive integer, got {self.size!r}")
        if not self.sign_determined and self.family not in SIGN_AMBIGUOUS_FAMILIES:
            raise ValueError(
                f"{self.family} carries no sign ambiguity; sign_determined must be true"
            )

    def is_pair(self) -> bool:
        return self.family in PAIR_FAMILIES

    def __str__(self) -> str:
        return format_descriptor(self)


def _param_sort_key(value):
    if value is None:
        return (0, Fraction(0), Fraction(0), Fraction(0))
    if value is INFINITY:
        return (2, Fraction(0), Fraction(0), Fraction(0))
    return (1, modulus_squared(value)) + lex_key(value)


def descriptor_sort_key(d: SummandDescriptor):
    """Total order on descriptors: family, size, then parameters."""
    eps_key = -1 if d.eps is None else d.eps
    return (
        _FAMILY_INDEX[d.family],
        d.size,
        eps_key,
        _param_sort_key(d.lam),
        _param_sort_key(d.mu),
        _param_sort_key(d.c),
        d.sign_determined,
    )


@dataclass(frozen=True)
class CanonicalDecomposition:
    """A multiset of canonical summands under one of the four relations."""

    relation: str
    summands: Tuple[SummandDescriptor, ...] = _dc_field(default=())

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        ordered = tuple(sorted(self.summands, key=descriptor_sort_key))
        object.__setattr__(self, "summands", ordered)

    def total_size(self) -> int:
        return sum(d.size for d in self.summands)

    def __str__(self) -> str:
        inner = ", ".join(format_descriptor(d) for d in self.summands)
        return f"{self.relation}: {{{inner}}}"


# ---------------------------------------------------------------------------
# Factories (validate invariants and normalize representatives).
# ---------------------------------------------------------------------------


def cm1(size: int, lam) -> SummandDescriptor:
    """Single matrix, zero diagonal, unit superdiagonal, constant subdiagonal."""
    lam = _scalar(lam)
    if size < 2 or size % 2:
        raise ValueError("CM1 requires an even size >= 2")
    if lam == ONE or lam == -ONE:
        raise ValueError("CM1 requires lambda != 1 and lambda != -1")
    if lam != ZERO:
        inv = ONE / lam
        if lex_key(inv) < lex_key(lam):
            lam = inv
    return SummandDescriptor("CM1", size, lam=lam)


def cm2(size: int, eps: int) -> SummandDescriptor:
    """Single matrix with corner entry eps and alternating -1,+1 subdiagonal."""
    if eps not in (0, 1):
        raise ValueError("CM2 requires eps in {0, 1}")
    if size % 4 == 0 and eps != 1:
        raise ValueError("CM2 requires eps = 1 when the size is a multiple of 4")
    return SummandDescriptor("CM2", size, eps=eps)


def cm3(size: int) -> SummandDescriptor:
    """Single matrix with alternating +1,-1 subdiagonal; size a multiple of 4."""
    if size < 4 or size % 4:
        raise ValueError("CM3 requires a size that is a positive multiple of 4")
    return SummandDescriptor("CM3", size)


def cmi1(size: int, lam) -> SummandDescriptor:
    """Sesquilinear analogue of CM1; any size, modulus-squared != 1."""
    lam = _scalar(lam)
    if size % 2 and lam != ZERO:
        raise ValueError("CMI1 requires lambda = 0 when the size is odd")
    if modulus_squared(lam) == 1:
        raise ValueError("CMI1 requires modulus_squared(lambda) != 1")
    if lam != ZERO and modulus_squared(lam) > 1:
        lam = ONE / lam.conjugate()
    return SummandDescriptor("CMI1", size, lam=lam)


def cmi2(size: int, mu, sign_determined: bool = True) -> SummandDescriptor:
    """Sesquilinear unit-circle family: mu times the CM2(eps=1) pattern."""
    mu = _scalar(mu)
    if modulus_squared(mu) != 1:
        raise ValueError("CMI2 requires modulus_squared(mu) = 1")
    return SummandDescriptor("CMI2", size, mu=mu, sign_determined=sign_determined)


def sss1n(size: int, eps: int, lam) -> SummandDescriptor:
    """Symmetric pair: odd-offdiagonal 1s against an eigenvalue-bearing partner."""
    lam = _scalar(lam)
    if eps not in (0, 1):
        raise ValueError("SSS1N requires eps in {0, 1}")
    if size % 2 == 0 and eps != 1:
        raise ValueError("SSS1N requires eps = 1 when the size is even")
    if size % 2 and lam != ZERO:
        raise ValueError("SSS1N requires lambda = 0 when the size is odd")
    return SummandDescriptor("SSS1N", size, lam=lam, eps=eps)


def ss2n(size: int, lam) -> SummandDescriptor:
    """Symmetric pair with leading 1 and even-offdiagonal coupling."""
    lam = _scalar(lam)
    if size % 2 == 0 and lam != ZERO:
        raise ValueError("SS2N requires lambda = 0 when the size is even")
    return SummandDescriptor("SS2N", size, lam=lam)


def lyg(size: int, lam) -> SummandDescriptor:
    """Symmetric pair (I, lam*I + N) built on the nilpotent symmetric N."""
    lam = _scalar(lam)
    return SummandDescriptor("LYG", size, lam=lam)


def nn_ident(size: int) -> SummandDescriptor:
    """Symmetric pair (N, I) built on the nilpotent symmetric N."""
    return SummandDescriptor("NN_IDENT", size)


def ssnew(size: int) -> SummandDescriptor:
    """Odd-size singular symmetric pair of staggered 2x2 exchange blocks."""
    if size % 2 == 0:
        raise ValueError("SSNEW requires an odd size")
    return SummandDescriptor("SSNEW", size)


def sc1(size: int, lam) -> SummandDescriptor:
    """Symmetric/skew pair with +-lambda eigenvalue pair; even size."""
    lam = _scalar(lam)
    if size < 2 or size % 2:
        raise ValueError("SC1 requires an even size >= 2")
    if lam == ZERO:
        raise ValueError("SC1 requires lambda != 0")
    if lex_key(-lam) > lex_key(lam):
        lam = -lam
    return SummandDescriptor("SC1", size, lam=lam)


def sc2(size: int, eps: int) -> SummandDescriptor:
    """Symmetric/skew pair with corner eps; eps = 1 forced for sizes 4k."""
    if eps not in (0, 1):
        raise ValueError("SC2 requires eps in {0, 1}")
    if size % 4 == 0 and eps != 1:
        raise ValueError("SC2 requires eps = 1 when the size is a multiple of 4")
    return SummandDescriptor("SC2", size, eps=eps)


def sc3(size: int) -> SummandDescriptor:
    """Symmetric/skew pair; size a multiple of 4."""
    if size < 4 or size % 4:
        raise ValueError("SC3 requires a size that is a positive multiple of 4")
    return SummandDescriptor("SC3", size)


def cc1(size: int, lam) -> SummandDescriptor:
    """Skew/skew pair carrying a doubled eigenvalue; even size."""
    lam = _scalar(lam)
    if size < 2 or size % 2:
        raise ValueError("CC1 requires an even size >= 2")
    return SummandDescriptor("CC1", size, lam=lam)


def cc23(size: int) -> SummandDescriptor:
    """Skew/skew pair: doubled infinite blocks (even) or singular pair (odd)."""
    return SummandDescriptor("CC23", size)


def he1(size: int, mu, sign_determined: bool = True) -> SummandDescriptor:
    """Hermitian pair with conjugate off-diagonals mu / conj(mu)."""
    mu = _scalar(mu)
    if size % 2:
        if mu != I_UNIT and mu != -I_UNIT:
            raise ValueError("HE1 requires mu = i or mu = -i when the size is odd")
        mu = I_UNIT
    else:
        if mu.im == 0:
            raise ValueError("HE1 requires a non-real mu when the size is even")
        if mu.im < 0:
            mu = mu.conjugate()
    return SummandDescriptor("HE1", size, mu=mu, sign_determined=sign_determined)


def he2(size: int, c, sign_determined: bool = True) -> SummandDescriptor:
    """Hermitian pair parameterized by the real eigenvalue c (or inf)."""
    if c is INFINITY:
        return SummandDescriptor("HE2", size, c=INFINITY, sign_determined=sign_determined)
    c = _scalar(c)
    if c.im != 0:
        raise ValueError("HE2 requires a real parameter c (or inf)")
    return SummandDescriptor("HE2", size, c=c, sign_determined=sign_determined)


_FACTORIES = {
    "CM1": cm1,
    "CM2": cm2,
    "CM3": cm3,
    "CMI1": cmi1,
    "CMI2": cmi2,
    "SSS1N": sss1n,
    "SS2N": ss2n,
    "LYG": lyg,
    "NN_IDENT": nn_ident,
    "SSNEW": ssnew,
    "SC1": sc1,
    "SC2": sc2,
    "SC3": sc3,
    "CC1": cc1,
    "CC23": cc23,
    "HE1": he1,
    "HE2": he2,
}


# ---------------------------------------------------------------------------
# Materialization.
# ---------------------------------------------------------------------------


def _tridiagonal(n: int, diag, upper, lower) -> Matrix:
    """Build the n x n tridiagonal matrix with 1-based entry callbacks.

    ``diag(l)`` fills position (l, l); ``upper(j)`` fills (j, j+1) and
    ``lower(j)`` fills (j+1, j) for j = 1 .. n-1.
    """
    rows = []
    for r in range(1, n + 1):
        row = []
        for col in range(1, n + 1):
            if col == r:
                row.append(diag(r))
            elif col == r + 1:
                row.append(upper(r))
            elif col == r - 1:
                row.append(lower(col))
            else:
                row.append(0)
        rows.append(row)
    return Matrix(rows)


def _const(value):
    return lambda _index: value


def _corner(value):
    return lambda index: value if index == 1 else 0


def _alternating(odd_value, even_value):
    return lambda j: odd_value if j % 2 else even_value


def _cm2_pattern(n: int, eps_entry, scale) -> Matrix:
    return _tridiagonal(
        n,
        _corner(scale * eps_entry),
        _const(scale * 1),
        lambda j: scale * (-1 if j % 2 else 1),
    )


def _he2_components(d: SummandDescriptor):
    """Recover (a, b) with a^2 + b^2 = 1 from the stored parameter c."""
    n = d.size
    if d.c is INFINITY:
        return (Fraction(0), Fraction(1)) if n % 2 else (Fraction(1), Fraction(0))
    c = d.c.re  # real by construction
    norm = 1 + c * c
    root = rational_sqrt(norm)
    if root is None:
        # 1 + c^2 = p/q in lowest terms; sqrt = sqrt(p*q) / q = f*sqrt(s) / q.
        p, q = norm.numerator, norm.denominator
        f, s = squarefree_split(p * q)
        context = TowerContext((s,))
        root = TowerElement({s: GaussianRational(Fraction(f, q))}, context)
    if n % 2:
        a = 1 / root
        b = c * a
    else:
        b = 1 / root
        a = -c * b
    return a, b


def materialize(d: SummandDescriptor):
    """Return the explicit matrix (or pair) named by the descriptor."""
    n = d.size
    family = d.family
    if family == "CM1":
        return _tridiagonal(n, _const(0), _const(1), _const(d.lam))
    if family == "CM2":
        return _cm2_pattern(n, d.eps, ONE)
    if family == "CM3":
        return _tridiagonal(n, _const(0), _const(1), lambda j: 1 if j % 2 else -1)
    if family == "CMI1":
        return _tridiagonal(n, _const(0), _const(1), _const(d.lam))
    if family == "CMI2":
        return _cm2_pattern(n, 1, d.mu)
    if family == "SSS1N":
        first = _tridiagonal(n, _const(0), _alternating(1, 0), _alternating(1, 0))
        second = _tridiagonal(
            n, _corner(d.eps), _alternating(d.lam, 1), _alternating(d.lam, 1)
        )
        return first, second
    if family == "SS2N":
        first = _tridiagonal(n, _corner(1), _alternating(0, 1), _alternating(0, 1))
        second = _tridiagonal(
            n, _corner(d.lam), _alternating(1, d.lam), _alternating(1, d.lam)
        )
        return first, second
    if family == "LYG":
        nilpotent = build_N(n)
        return Matrix.identity(n), _scaled_identity(d.lam, n) + nilpotent
    if family == "NN_IDENT":
        return build_N(n), Matrix.identity(n)
    if family == "SSNEW":
        k = (n - 1) // 2
        return (
            direct_sum(build_M("+", k), Matrix.zeros(1, 1)),
            direct_sum(Matrix.zeros(1, 1), build_M("+", k)),
        )
    if family == "SC1":
        first = _tridiagonal(n, _const(0), _const(1), _const(1))
        second = _tridiagonal(n, _const(0), _const(d.lam), _const(-d.lam))
        return first, second
    if family == "SC2":
        first = _tridiagonal(n, _corner(d.eps), _alternating(0, 1), _alternating(0, 1))
        second = _tridiagonal(n, _const(0), _alternating(1, 0), _alternating(-1, 0))
        return first, second
    if family == "SC3":
        first = _tridiagonal(n, _const(0), _alternating(1, 0), _alternating(1, 0))
        second = _tridiagonal(n, _const(0), _alternating(0, 1), _alternating(0, -1))
        return first, second
    if family == "CC1":
        first = _tridiagonal(n, _const(0), _alternating(1, 0), _alternating(-1, 0))
        second = _tridiagonal(
            n, _const(0), _alternating(d.lam, 1), _alternating(-d.lam, -1)
        )
        return first, second
    if family == "CC23":
        first = _tridiagonal(n, _const(0), _alternating(0, 1), _alternating(0, -1))
        second = _tridiagonal(n, _const(0), _alternating(1, 0), _alternating(-1, 0))
        return first, second
    if family == "HE1":
        first = _tridiagonal(n, _const(0), _const(1), _const(1))
        second = _tridiagonal(n, _const(0), _const(d.mu), _const(d.mu.conjugate()))
        return first, second
    if family == "HE2":
        a, b = _he2_components(d)
        first = _tridiagonal(n, _corner(a), _alternating(b, a), _alternating(b, a))
        second = _tridiagonal(n, _corner(b), _alternating(-a, b), _alternating(-a, b))
        return first, second
    raise ValueError(f"unknown family {family!r}")


def _scaled_identity(scalar, n: int) -> Matrix:
    return Matrix.diagonal([scalar] * n)


def build_N(n: int) -> Matrix:
    """Symmetric tridiagonal nilpotent of size n over the radical tower.

    Diagonal n-1, n-3, ..., 1-n; off-diagonal entries i*sqrt(l(n-l)).
    Nilpotent of index n with rank n-1.
    """
    if n < 1:
        raise ValueError("build_N requires n >= 1")
    radicals = set()
    offdiag = []
    for l in range(1, n):
        f, s = squarefree_split(l * (n - l))
        offdiag.append((f, s))
        if s > 1:
            radicals.add(s)
    context = TowerContext(tuple(sorted(radicals)))

    def entry(f, s):
        coefficient = GaussianRational(Fraction(0), Fraction(f))
        if s == 1:
            return coefficient
        return TowerElement({s: coefficient}, context)

    values = [entry(f, s) for f, s in offdiag]
    return _tridiagonal(
        n,
        lambda l: Fraction(n + 1 - 2 * l),
        lambda j: values[j - 1],
        lambda j: values[j - 1],
    )


# ---------------------------------------------------------------------------
# Structural transforms.
# ---------------------------------------------------------------------------


def p_orders(n: int) -> tuple[list[int], list[int]]:
    """Row and column rearrangement orders (0-based) for ``p_transform``."""
    if n < 1:
        raise ValueError("order requires n >= 1")
    if n % 2:
        k = (n - 1) // 2
        rows = list(range(2 * k, 0, -2)) + list(range(1, 2 * k, 2)) + [2 * k + 1]
        cols = list(range(2 * k + 1, 2, -2)) + [1] + list(range(2, 2 * k + 1, 2))
    else:
        k = n // 2
        rows = list(range(2 * k - 1, 0, -2)) + list(range(2, 2 * k + 1, 2))
        cols = list(range(2 * k, 1, -2)) + list(range(1, 2 * k, 2))
    return [r - 1 for r in rows], [c - 1 for c in cols]


def p_transform(a: Matrix) -> Matrix:
    """Rearrange a tridiagonal matrix into its bidiagonal staircase form."""
    a._require_square("p_transform")
    if not a.is_tridiagonal():
        raise ValueError("p_transform requires a tridiagonal matrix")
    rows, cols = p_orders(a.rows)
    return a.permute_rows(rows).permute_cols(cols)


def sym_skew_split(a: Matrix) -> tuple[Matrix, Matrix]:
    """Split a square matrix into its symmetric and skew-symmetric parts."""
    a._require_square("sym_skew_split")
    half = Fraction(1, 2)
    transposed = a.transpose()
    return half * (a + transposed), half * (a - transposed)


def cartesian_split(a: Matrix) -> tuple[Matrix, Matrix]:
    """Split a square matrix A into Hermitian (B, C) with A = B + iC."""
    a._require_square("cartesian_split")
    half = Fraction(1, 2)
    adjoint = a.conjugate_transpose()
    first = half * (a + adjoint)
    second = I_UNIT * (half * (adjoint - a))
    return first, second


def mu_from_lambda(lam, relation: str = "congruence") -> GaussianRational:
    """Map a single-matrix eigenvalue parameter to the pair-side parameter.

    For plain congruence the map is the self-inverse substitution
    (1 - lam) / (1 + lam); for *congruence it is i*(conj(lam) - 1)/(conj(lam) + 1).
    """
    lam = _scalar(lam)
    if relation == "congruence":
        if lam == -ONE:
            raise ValueError("pole: lambda = -1 has no image under the substitution")
        return (ONE - lam) / (ONE + lam)
    if relation == "star_congruence":
        conj = lam.conjugate()
        if conj == -ONE:
            raise ValueError("pole: conj(lambda) = -1 has no image under the substitution")
        return (conj - ONE) / (conj + ONE) * I_UNIT
    raise ValueError(f"unknown relation {relation!r}")


def lambda_from_mu(mu, relation: str = "congruence") -> GaussianRational:
    """Inverse of :func:`mu_from_lambda` for the same relation."""
    mu = _scalar(mu)
    if relation == "congruence":
        if mu == -ONE:
            raise ValueError("pole: mu = -1 has no image under the substitution")
        return (ONE - mu) / (ONE + mu)
    if relation == "star_congruence":
        conj = mu.conjugate()
        if conj == -I_UNIT:
            raise ValueError("pole: conj(mu) = -i has no image under the substitution")
        return (I_UNIT - conj) / (I_UNIT + conj)
    raise ValueError(f"unknown relation {relation!r}")


# ---------------------------------------------------------------------------
# Descriptor text form.
# ---------------------------------------------------------------------------

_DESCRIPTOR_RE = _re.compile(r"^\s*([A-Z0-9_]+)\s*\(\s*(.*?)\s*\)\s*$")


def format_descriptor(d: SummandDescriptor) -> str:
    """Render a descriptor as ``FAMILY(n=..., lambda=..., ..., sign=?)``."""
    parts = [f"n={d.size}"]
    if d.lam is not None:
        parts.append(f"lambda={format_scalar(d.lam)}")
    if d.eps is not None:
        parts.append(f"eps={d.eps}")
    if d.mu is not None:
        parts.append(f"mu={format_scalar(d.mu)}")
    if d.c is not None:
        parts.append("c=inf" if d.c is INFINITY else f"c={format_scalar(d.c)}")
    if not d.sign_determined:
        parts.append("sign=?")
    return f"{d.family}({', '.join(parts)})"


def parse_descriptor(text: str) -> SummandDescriptor:
    """Parse the descriptor text form produced by :func:`format_descriptor`."""
    match = _DESCRIPTOR_RE.match(text)
    if not match:
        raise ParseError(f"malformed descriptor: {text!r}")
    family, argument_text = match.group(1), match.group(2)
    factory = _FACTORIES.get(family)
    if factory is None:
        raise ParseError(f"unknown family {family!r}")
    values = {}
    if argument_text:
        for chunk in argument_text.split(","):
            chunk = chunk.strip()
            if not chunk or "=" not in chunk:
                raise ParseError(f"malformed descriptor argument: {chunk!r}")
            key, _, raw = chunk.partition("=")
            key, raw = key.strip(), raw.strip()
            if key in values:
                raise ParseError(f"duplicate descriptor argument {key!r}")
            values[key] = raw
    try:
        size = int(values.pop("n"))
    except KeyError:
        raise ParseError("descriptor is missing the size argument n") from None
    except ValueError:
        raise ParseError("descriptor size n must be an integer") from None

    sign_token = values.pop("sign", None)
    sign_determined = True
    negate = False
    if sign_token is not None:
        if sign_token == "?":
            sign_determined = False
        elif sign_token == "+":
            pass
        elif sign_token == "-":
            negate = True
        else:
            raise ParseError(f"malformed sign marker {sign_token!r}")

    kwargs = {}
    for key, raw in values.items():
        if key == "lambda":
            kwargs["lam"] = parse_scalar(raw)
        elif key == "mu":
            kwargs["mu"] = parse_scalar(raw)
        elif key == "eps":
            if raw not in ("0", "1"):
                raise ParseError(f"malformed eps value {raw!r}")
            kwargs["eps"] = int(raw)
        elif key == "c":
            kwargs["c"] = INFINITY if raw == "inf" else parse_scalar(raw)
        else:
            raise ParseError(f"unknown descriptor argument {key!r}")
    if negate and "mu" in kwargs:
        kwargs["mu"] = -kwargs["mu"]
    if family in SIGN_AMBIGUOUS_FAMILIES:
        kwargs["sign_determined"] = sign_determined
    elif not sign_determined:
        raise ParseError(f"{family} does not admit an undetermined sign")
    try:
        return factory(size, **kwargs)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"invalid descriptor {text!r}: {exc}") from None
