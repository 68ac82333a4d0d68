"""Exact scalar arithmetic in Q and Q(i).

The working field for all canonical-form computations is Q(i), represented
by :class:`GaussianRational` with exact :class:`fractions.Fraction`
components.  The fixed field of the conjugation involution is Q, which
carries the unique linear order used when canonical representatives must be
selected from an orbit.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd, isqrt

from .errors import ParseError

# The rational scalar type.  Fraction already provides normalized exact
# arithmetic, hashing, and total order, which is everything required here.
Rational = Fraction


class GaussianRational:
    """An element a + b*i of Q(i) with exact rational components.

    Instances are immutable.  The value is held internally as one integer
    triple ``(a + b*i) / d`` with ``d >= 1`` and ``gcd(a, b, d) == 1``, so
    each arithmetic operation costs a few integer products plus a single
    normalization; :attr:`re` and :attr:`im` expose the components as
    :class:`fractions.Fraction` values.  Arithmetic accepts ``int`` and
    ``Fraction`` operands and coerces them; operations with scalar types
    from richer fields defer via ``NotImplemented`` so the reflected
    operation can resolve.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if type(re) is int and type(im) is int:
            self._a, self._b, self._d = re, im, 1
            return
        re = re if isinstance(re, Fraction) else Fraction(re)
        im = im if isinstance(im, Fraction) else Fraction(im)
        q, s = re.denominator, im.denominator
        g = gcd(q, s)
        qg = q // g
        # Already normalized: a common prime of all three would have to
        # divide the numerator of whichever component carries the higher
        # power of it in the denominator, contradicting reduced fractions.
        self._a = re.numerator * (s // g)
        self._b = im.numerator * qg
        self._d = qg * s

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return _make(self._a + other._a, self._b + other._b, d1)
        return _make(
            self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2
        )

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return _make(self._a - other._a, self._b - other._b, d1)
        return _make(
            self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2
        )

    def __rsub__(self, other):
        other = GaussianRational._coerce(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational(other)
        a, b, d1 = self._a, self._b, self._d
        c, e, d2 = other._a, other._b, other._d
        # Real and purely imaginary factors are the overwhelmingly common
        # case in matrix work; avoid the four-product complex formula there.
        if b == 0:
            if a == 0:
                return _GR_ZERO
            if e == 0:
                if c == 0:
                    return _GR_ZERO
                result = _gr_new(GaussianRational)
                result._b = 0
                if d1 == 1 and d2 == 1:
                    # Integral operands dominate fraction-free elimination;
                    # their product needs no reduction at all.
                    result._a = a * c
                    result._d = 1
                    return result
                # real * real: cross-cancellation leaves a reduced result
                # because gcd(a, d1) == gcd(c, d2) == 1.
                g1 = gcd(a, d2)
                g2 = gcd(c, d1)
                result._a = (a // g1) * (c // g2)
                result._d = (d1 // g2) * (d2 // g1)
                return result
            return _make(a * c, a * e, d1 * d2)
        if e == 0:
            if c == 0:
                return _GR_ZERO
            return _make(a * c, b * c, d1 * d2)
        return _make(a * c - b * e, a * e + b * c, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational(other)
        c, e, d2 = other._a, other._b, other._d
        n = c * c + e * e
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b, d1 = self._a, self._b, self._d
        return _make((a * c + b * e) * d2, (b * c - a * e) * d2, d1 * n)

    def __rtruediv__(self, other):
        other = GaussianRational._coerce(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (GaussianRational(1) / self) ** (-exponent)
        result = GaussianRational(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __neg__(self):
        result = _gr_new(GaussianRational)
        result._a = -self._a
        result._b = -self._b
        result._d = self._d
        return result

    def __pos__(self):
        return self

    # -- structure --------------------------------------------------------

    def conjugate(self) -> "GaussianRational":
        """Image under the involution i -> -i."""
        if self._b == 0:
            return self
        result = _gr_new(GaussianRational)
        result._a = self._a
        result._b = -self._b
        result._d = self._d
        return result

    def modulus_squared(self) -> Fraction:
        """The norm a^2 + b^2, an element of the fixed field Q."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def is_rational(self) -> bool:
        return self._b == 0

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        if type(other) is not GaussianRational:
            other = GaussianRational._coerce(other)
            if other is None:
                return NotImplemented
        # The normalized triple is unique per value.
        return (
            self._a == other._a and self._b == other._b and self._d == other._d
        )

    def __hash__(self):
        # Matches hash(Fraction) on the embedded copy of Q so that equal
        # scalars of different types collide as dict keys.
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((Fraction(self._a, self._d), Fraction(self._b, self._d)))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"


_gr_new = GaussianRational.__new__


def _make(a: int, b: int, d: int) -> GaussianRational:
    """Build a scalar from an integer triple with d > 0, normalizing it."""
    if d != 1:
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
    result = _gr_new(GaussianRational)
    result._a = a
    result._b = b
    result._d = d
    return result


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)
_GR_ZERO = ZERO


def conjugate(x):
    """Conjugation involution of the working field, extended to Q."""
    if isinstance(x, (int, Fraction)):
        return x
    return x.conjugate()


def modulus_squared(x):
    """Norm of ``x`` relative to the conjugation involution."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x) ** 2
    return x.modulus_squared()


def _as_fixed(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError(f"{x} is not in the fixed field Q")
        return x.re
    raise TypeError(f"cannot interpret {x!r} as a fixed-field element")


def compare_fixed(a, b) -> int:
    """Compare two elements of the fixed field Q.

    Returns -1, 0, or 1.  Raises ValueError when an argument has a nonzero
    imaginary part, because only the fixed field is ordered.

    >>> compare_fixed(Fraction(1, 2), Fraction(2, 3))
    -1
    """
    fa, fb = _as_fixed(a), _as_fixed(b)
    if fa < fb:
        return -1
    if fa > fb:
        return 1
    return 0


def lex_key(x):
    """Sort key realizing the total order on Q(i): lexicographic on (re, im).

    This order exists purely for deterministic tie-breaking and canonical
    representative selection; it restricts to the usual order on Q.
    """
    g = GaussianRational._coerce(x)
    if g is None:
        raise TypeError(f"cannot order {x!r}")
    return (g.re, g.im)


def rational_sqrt(f) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None.

    Numerator and denominator of the normalized fraction must both be
    perfect squares.
    """
    f = Fraction(f)
    if f < 0:
        return None
    num, den = f.numerator, f.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt_in_field(x) -> GaussianRational | None:
    """A square root of ``x`` inside Q(i), or None when none exists.

    When the two roots differ, the one that is larger in the lexicographic
    order on (re, im) is returned, so the choice is deterministic.

    >>> sqrt_in_field(4)
    GaussianRational('2')
    >>> sqrt_in_field(GaussianRational(0, 2))
    GaussianRational('1+i')
    >>> sqrt_in_field(2) is None
    True
    """
    g = GaussianRational._coerce(x)
    if g is None:
        raise TypeError(f"cannot take a field square root of {x!r}")
    a, b = g.re, g.im
    if b == 0:
        if a == 0:
            return GaussianRational(0)
        r = rational_sqrt(a)
        if r is not None:
            return GaussianRational(r)
        r = rational_sqrt(-a)
        if r is not None:
            return GaussianRational(0, r)
        return None
    # (u + vi)^2 = a + bi forces u^2 = (a + sqrt(a^2+b^2))/2 and v = b/(2u),
    # so x has a root in Q(i) exactly when both radicands are rational
    # squares.
    r = rational_sqrt(a * a + b * b)
    if r is None:
        return None
    u = rational_sqrt((a + r) / 2)
    if u is None or u == 0:
        return None
    v = b / (2 * u)
    return GaussianRational(u, v)


# -- scalar text ----------------------------------------------------------
#
# Token grammar (no whitespace anywhere):
#   real only       3   -3/2
#   imaginary only  i   -i   2i   1/5i
#   both            -3/2+1/5i   2-i     (sign of the imaginary part is
#                                        mandatory when both parts appear)

_REAL_ONLY = _re.compile(r"^([+-]?\d+(?:/\d+)?)$")
_IMAG_ONLY = _re.compile(r"^([+-]?)(\d+(?:/\d+)?)?i$")
_BOTH = _re.compile(r"^([+-]?\d+(?:/\d+)?)([+-])(\d+(?:/\d+)?)?i$")


def parse_scalar(token: str) -> GaussianRational:
    """Parse one scalar token of the grammar above.

    >>> parse_scalar("-3/2+1/5i")
    GaussianRational('-3/2+1/5i')
    >>> parse_scalar("i")
    GaussianRational('i')
    """
    try:
        m = _IMAG_ONLY.match(token)
        if m:
            sign, mag = m.group(1), m.group(2)
            value = Fraction(mag) if mag else Fraction(1)
            return GaussianRational(0, -value if sign == "-" else value)
        m = _BOTH.match(token)
        if m:
            re_part = Fraction(m.group(1))
            mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
            return GaussianRational(re_part, -mag if m.group(2) == "-" else mag)
        m = _REAL_ONLY.match(token)
        if m:
            return GaussianRational(Fraction(m.group(1)))
    except ZeroDivisionError:
        pass
    raise ParseError(f"invalid scalar token: {token!r}")


def format_scalar(x) -> str:
    """Render a scalar as a whitespace-free token; inverse of parse_scalar."""
    g = GaussianRational._coerce(x)
    if g is None:
        raise TypeError(f"cannot format {x!r} as a scalar token")
    re_part, im_part = g.re, g.im
    if im_part == 0:
        return str(re_part)
    mag = -im_part if im_part < 0 else im_part
    body = ("" if mag == 1 else str(mag)) + "i"
    if re_part == 0:
        return ("-" if im_part < 0 else "") + body
    return str(re_part) + ("-" if im_part < 0 else "+") + body
