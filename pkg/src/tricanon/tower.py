"""Real multi-quadratic extensions of Q(i).

Elements are finite sums  sum_S  c_S * prod_{m in S} sqrt(m)  where the
coefficients c_S lie in Q(i) and S ranges over subsets of a context's set
of distinct square-free integers > 1.  The radicals are real, so the
conjugation involution of the field acts on coefficients alone.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd, prod

from .errors import ParseError
from .field import GaussianRational, format_scalar, parse_scalar


_GR0 = None  # set after imports resolve; see bottom of module


def squarefree_split(m: int) -> tuple[int, int]:
    """Write a positive integer as f*f*s with s square-free; returns (f, s)."""
    if m <= 0:
        raise ValueError("argument must be a positive integer")
    f, s = 1, 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            f *= d ** (e // 2)
            if e % 2:
                s *= d
        d += 1
    s *= m
    return f, s


class TowerContext:
    """An ordered set of independent radicals defining a tower over Q(i)."""

    __slots__ = ("radicals",)

    def __init__(self, radicals=()):
        rads = sorted(set(radicals))
        for m in rads:
            if not isinstance(m, int) or m <= 1:
                raise ValueError(f"radical {m!r} must be an integer > 1")
            if squarefree_split(m)[1] != m:
                raise ValueError(f"radical {m} is not square-free")
        self.radicals = tuple(rads)

    def adjoin(self, m: int) -> "TowerContext":
        """Context extended by sqrt(m) for a positive integer m.

        The square-free part of m is what gets adjoined; perfect squares
        leave the context unchanged, and adjoining is idempotent.
        """
        if not isinstance(m, int) or m <= 0:
            raise ValueError(f"can only adjoin the square root of a positive integer, not {m!r}")
        s = squarefree_split(m)[1]
        if s == 1 or s in self.radicals:
            return self
        return TowerContext(self.radicals + (s,))

    def merge(self, other: "TowerContext") -> "TowerContext":
        if self.radicals == other.radicals:
            return self
        return TowerContext(self.radicals + other.radicals)

    def from_scalar(self, value) -> "TowerElement":
        g = GaussianRational._coerce(value)
        if g is None:
            raise TypeError(f"cannot embed {value!r} into the tower")
        coeffs = {1: g} if g else {}
        return TowerElement._make(coeffs, self)

    def sqrt_int(self, m: int) -> "TowerElement":
        """The element sqrt(m) for a positive integer m.

        The square-free part of m must already be a radical of this
        context (or 1).
        """
        if not isinstance(m, int) or m <= 0:
            raise ValueError(f"square root of {m!r} is not a positive real radical")
        f, s = squarefree_split(m)
        if s == 1:
            return self.from_scalar(f)
        if s not in self.radicals:
            raise ValueError(f"sqrt({s}) is not in this tower; adjoin it first")
        return TowerElement._make({s: GaussianRational(f)}, self)

    def __eq__(self, other):
        return isinstance(other, TowerContext) and self.radicals == other.radicals

    def __hash__(self):
        return hash(self.radicals)

    def __repr__(self):
        return f"TowerContext({list(self.radicals)!r})"


class TowerElement:
    """An element of a real multi-quadratic tower over Q(i).

    ``coeffs`` maps square-free integers m >= 1 to nonzero GaussianRational
    coefficients of sqrt(m); the key 1 indexes the Q(i) component.  This
    basis is canonical (sqrt(2)*sqrt(3) and sqrt(6) coincide), so equality
    is representation-independent.  Keys may also be given as iterables of
    integers, meaning the product of their square roots.  Instances are
    immutable by convention; arithmetic merges contexts, so elements of
    compatible towers combine freely.
    """

    __slots__ = ("coeffs", "context")

    def __init__(self, coeffs, context=None):
        ctx = context if context is not None else TowerContext()
        clean = {}
        for key, value in coeffs.items():
            g = GaussianRational._coerce(value)
            if g is None:
                raise TypeError(f"coefficient {value!r} is not in Q(i)")
            if not isinstance(key, int):
                key = prod(key) if key else 1
            if key < 1:
                raise ValueError(f"radicand {key!r} must be a positive integer")
            f, key = squarefree_split(key)
            if f != 1:
                g = g * f
            if key != 1 and key not in ctx.radicals:
                ctx = ctx.adjoin(key)
            if g:
                total = clean.get(key, _GR0) + g
                if total:
                    clean[key] = total
                else:
                    clean.pop(key, None)
        self.coeffs = clean
        self.context = ctx

    @classmethod
    def _make(cls, coeffs, context):
        self = object.__new__(cls)
        self.coeffs = coeffs
        self.context = context
        return self

    @staticmethod
    def _coerce(value, context):
        if isinstance(value, TowerElement):
            return value
        g = GaussianRational._coerce(value)
        if g is None:
            return None
        return TowerElement._make({1: g} if g else {}, context)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if type(other) is not TowerElement:
            other = TowerElement._coerce(other, self.context)
            if other is None:
                return NotImplemented
        if not other.coeffs:
            merged = self.context.merge(other.context)
            return self if merged is self.context else TowerElement._make(self.coeffs, merged)
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            total = coeffs.get(key)
            if total is None:
                coeffs[key] = value
                continue
            total = total + value
            if total:
                coeffs[key] = total
            else:
                del coeffs[key]
        return TowerElement._make(coeffs, self.context.merge(other.context))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement._make(
            {key: -value for key, value in self.coeffs.items()}, self.context
        )

    def __sub__(self, other):
        if type(other) is not TowerElement:
            other = TowerElement._coerce(other, self.context)
            if other is None:
                return NotImplemented
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            total = coeffs.get(key)
            if total is None:
                coeffs[key] = -value
                continue
            total = total - value
            if total:
                coeffs[key] = total
            else:
                del coeffs[key]
        return TowerElement._make(coeffs, self.context.merge(other.context))

    def __rsub__(self, other):
        other = TowerElement._coerce(other, self.context)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        if type(other) is not TowerElement:
            other = TowerElement._coerce(other, self.context)
            if other is None:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        ctx = self.context.merge(other.context)
        if not a or not b:
            return TowerElement._make({}, ctx)
        # Scaling by a Q(i) element keeps every radicand fixed.
        if len(b) == 1 and 1 in b:
            ct = b[1]
            return TowerElement._make({k: v * ct for k, v in a.items()}, ctx)
        if len(a) == 1 and 1 in a:
            cs = a[1]
            return TowerElement._make({k: cs * v for k, v in b.items()}, ctx)
        coeffs = {}
        for ks, cs in a.items():
            for kt, ct in b.items():
                # sqrt(m)*sqrt(m') = g*sqrt(m m'/g^2) with g = gcd(m, m').
                if ks == 1:
                    key, term = kt, cs * ct
                elif kt == 1:
                    key, term = ks, cs * ct
                else:
                    shared = gcd(ks, kt)
                    key = (ks // shared) * (kt // shared)
                    term = cs * ct if shared == 1 else cs * ct * shared
                total = coeffs.get(key)
                if total is None:
                    if term:
                        coeffs[key] = term
                    continue
                total = total + term
                if total:
                    coeffs[key] = total
                else:
                    del coeffs[key]
        return TowerElement._make(coeffs, ctx)

    __rmul__ = __mul__

    def invert(self) -> "TowerElement":
        """Multiplicative inverse, by successive conjugation descent."""
        if not self.coeffs:
            raise ZeroDivisionError("division by zero in tower")
        p = max((_smallest_prime_factor(key) for key in self.coeffs if key != 1),
                default=None)
        if p is None:
            g = self.coeffs[1]
            return TowerElement._make({1: GaussianRational(1) / g}, self.context)
        # Split as u + v*sqrt(p); then (u + v*sqrt(p)) * (u - v*sqrt(p))
        # lives in the subtower whose radicands avoid p, and recursion
        # terminates because the prime support strictly shrinks.
        conj_coeffs = {}
        for key, value in self.coeffs.items():
            conj_coeffs[key] = -value if key % p == 0 else value
        conj = TowerElement._make(conj_coeffs, self.context)
        reduced = self * conj
        if any(key % p == 0 for key in reduced.coeffs):
            raise ArithmeticError("conjugation descent failed to eliminate a radical")
        return conj * reduced.invert()

    def __truediv__(self, other):
        other = TowerElement._coerce(other, self.context)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = TowerElement._coerce(other, self.context)
        if other is None:
            return NotImplemented
        return other * self.invert()

    # -- structure --------------------------------------------------------

    def conjugate(self) -> "TowerElement":
        """Conjugation involution: i -> -i, acting on coefficients only.

        The radicals are square roots of positive integers, hence real and
        fixed by the involution.
        """
        return TowerElement._make(
            {key: value.conjugate() for key, value in self.coeffs.items()}, self.context
        )

    def to_gaussian(self) -> GaussianRational | None:
        """The Q(i) value of this element, or None if a radical survives."""
        if any(key != 1 for key in self.coeffs):
            return None
        return self.coeffs.get(1, GaussianRational(0))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = TowerElement._coerce(other, self.context)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        g = self.to_gaussian()
        if g is not None:
            return hash(g)
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        return format_tower(self)

    def __repr__(self):
        return f"TowerElement({format_tower(self)!r})"


def format_tower(x) -> str:
    """Render a tower element as a sum of monomials like ``1/2*sqrt(2)+3i*sqrt(6)``.

    Every monomial coefficient is purely real or purely imaginary, which
    keeps the text unambiguous; the Q(i) component may contribute two
    monomials.
    """
    if isinstance(x, GaussianRational):
        return format_scalar(x)
    terms = []
    for key in sorted(x.coeffs):
        c = x.coeffs[key]
        radical = key
        for mag, imag in ((c.re, False), (c.im, True)):
            if mag == 0:
                continue
            negative = mag < 0
            mag = -mag if negative else mag
            if key != 1:
                coeff = ("" if mag == 1 else str(mag)) + ("i" if imag else "")
                body = (coeff + "*" if coeff else "") + f"sqrt({radical})"
                if coeff == "i":
                    body = f"i*sqrt({radical})"
            else:
                body = ("" if mag == 1 and imag else str(mag)) + ("i" if imag else "")
            terms.append(("-" if negative else "+", body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += sign + body
    return out


_TOWER_TERM = _re.compile(
    r"^(?P<coeff>(?:\d+(?:/\d+)?)?i?)?(?:\*?sqrt\((?P<rad>\d+)\))?$"
)


def parse_tower(text: str) -> TowerElement:
    """Parse tower-element text produced by :func:`format_tower`."""
    s = text.strip()
    if not s:
        raise ParseError("empty tower element")
    # Top-level splits: every sign starts a new monomial (sqrt arguments
    # contain only digits, so no sign can occur inside a term).
    pieces = []
    start = 0
    for idx in range(1, len(s)):
        if s[idx] in "+-":
            pieces.append(s[start:idx])
            start = idx
    pieces.append(s[start:])
    result = TowerElement({})
    for piece in pieces:
        sign = 1
        if piece and piece[0] in "+-":
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:]
        m = _TOWER_TERM.match(piece)
        if not m or (not m.group("coeff") and not m.group("rad")):
            raise ParseError(f"invalid tower term: {piece!r}")
        coeff_text = m.group("coeff") or ""
        if coeff_text in ("", None):
            coeff = GaussianRational(1)
        else:
            coeff = parse_scalar(coeff_text)
        if sign < 0:
            coeff = -coeff
        if m.group("rad") is not None:
            rad = int(m.group("rad"))
            if rad <= 0:
                raise ParseError(f"invalid radicand in {piece!r}")
            f, sq = squarefree_split(rad)
            term_coeffs = {sq: coeff * f}
            term = TowerElement(term_coeffs)
        else:
            term = TowerElement({1: coeff})
        result = result + term
    return result


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


_GR0 = GaussianRational(0)
