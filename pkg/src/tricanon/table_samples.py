"""Descriptor enumeration used to re-derive the family/block tables.

For each family this yields every admissible descriptor up to a size bound,
with scalar parameters drawn from a fixed sample that exercises zero, real,
imaginary, unit-modulus and general values while respecting each family's
invariants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .field import ZERO, I_UNIT, GaussianRational, modulus_squared
from .summands import (
    INFINITY,
    SummandDescriptor,
    cc1,
    cc23,
    cm1,
    cm2,
    cm3,
    cmi1,
    cmi2,
    he1,
    he2,
    lyg,
    nn_ident,
    sc1,
    sc2,
    sc3,
    ss2n,
    sss1n,
    ssnew,
)

PARAMETER_SAMPLE = (
    ZERO,
    GaussianRational(2),
    GaussianRational(Fraction(-1, 2)),
    I_UNIT,
    GaussianRational(1, 1),
    GaussianRational(Fraction(3, 5), Fraction(4, 5)),
)

_ONE = GaussianRational(1)


def _unit_modulus(x: GaussianRational) -> bool:
    return modulus_squared(x) == Fraction(1)


def _rational(x: GaussianRational) -> bool:
    return x.im == 0


def sample_descriptors(max_size: int) -> Iterator[SummandDescriptor]:
    """Yield each admissible descriptor of size <= max_size exactly once."""
    seen: set[SummandDescriptor] = set()

    def emit(descriptor: SummandDescriptor):
        if descriptor not in seen:
            seen.add(descriptor)
            yield descriptor

    for n in range(1, max_size + 1):
        # Congruence families.
        if n % 2 == 0:
            for lam in PARAMETER_SAMPLE:
                if lam != _ONE and lam != -_ONE:
                    yield from emit(cm1(n, lam))
        for eps in (0, 1):
            if eps == 0 and n % 4 == 0:
                continue
            yield from emit(cm2(n, eps))
        if n % 4 == 0:
            yield from emit(cm3(n))

        # *Congruence families.
        if n % 2 == 1:
            yield from emit(cmi1(n, ZERO))
        else:
            for lam in PARAMETER_SAMPLE:
                if not _unit_modulus(lam):
                    yield from emit(cmi1(n, lam))
        for mu in PARAMETER_SAMPLE:
            if _unit_modulus(mu):
                yield from emit(cmi2(n, mu))

        # Symmetric/symmetric pair families.
        if n % 2 == 1:
            yield from emit(sss1n(n, 0, ZERO))
            yield from emit(sss1n(n, 1, ZERO))
            for lam in PARAMETER_SAMPLE:
                yield from emit(ss2n(n, lam))
        else:
            for lam in PARAMETER_SAMPLE:
                yield from emit(sss1n(n, 1, lam))
            yield from emit(ss2n(n, ZERO))
        for lam in PARAMETER_SAMPLE:
            yield from emit(lyg(n, lam))
        yield from emit(nn_ident(n))
        if n % 2 == 1:
            yield from emit(ssnew(n))

        # Symmetric/skew-symmetric pair families.
        if n % 2 == 0:
            for lam in PARAMETER_SAMPLE:
                if lam != ZERO:
                    yield from emit(sc1(n, lam))
        for eps in (0, 1):
            if eps == 0 and n % 4 == 0:
                continue
            yield from emit(sc2(n, eps))
        if n % 4 == 0:
            yield from emit(sc3(n))

        # Skew-symmetric/skew-symmetric pair families.
        if n % 2 == 0:
            for lam in PARAMETER_SAMPLE:
                yield from emit(cc1(n, lam))
        yield from emit(cc23(n))

        # Hermitian pair families.
        if n % 2 == 1:
            yield from emit(he1(n, I_UNIT))
        else:
            for mu in PARAMETER_SAMPLE:
                if mu.im != 0:
                    yield from emit(he1(n, mu))
        for c in PARAMETER_SAMPLE:
            if _rational(c):
                yield from emit(he2(n, c.re))
        yield from emit(he2(n, INFINITY))
