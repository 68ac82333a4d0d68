"""Real multi-quadratic tower arithmetic over Q(i)."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tricanon import (
    GaussianRational,
    TowerContext,
    TowerElement,
    format_tower,
    parse_tower,
    squarefree_split,
)
from tricanon.field import I_UNIT, ONE


# -- square-free split -----------------------------------------------------------


@pytest.mark.parametrize(
    "m,expected",
    [
        (1, (1, 1)),
        (2, (1, 2)),
        (4, (2, 1)),
        (8, (2, 2)),
        (12, (2, 3)),
        (45, (3, 5)),
        (49, (7, 1)),
        (50, (5, 2)),
        (360, (6, 10)),
    ],
)
def test_squarefree_split_pinned(m, expected):
    assert squarefree_split(m) == expected


@given(st.integers(min_value=1, max_value=4000))
def test_squarefree_split_reconstructs(m):
    f, s = squarefree_split(m)
    assert f * f * s == m
    assert squarefree_split(s) == (1, s)


# -- contexts --------------------------------------------------------------------


def test_context_construction_and_adjoin():
    ctx = TowerContext()
    assert ctx.radicals == ()
    ctx2 = ctx.adjoin(2)
    assert ctx2.radicals == (2,)
    assert ctx2.adjoin(8).radicals == (2,)  # 8 = 4 * 2: same radical
    assert ctx2.adjoin(4) is ctx2  # perfect square: no-op
    assert ctx2.adjoin(3).radicals == (2, 3)


def test_context_rejects_bad_radicals():
    with pytest.raises(ValueError):
        TowerContext([4])
    with pytest.raises(ValueError):
        TowerContext([1])
    with pytest.raises(ValueError):
        TowerContext().adjoin(0)


def test_context_merge():
    a = TowerContext([2])
    b = TowerContext([3])
    assert a.merge(b).radicals == (2, 3)
    assert a.merge(a) is a


def test_sqrt_int():
    ctx = TowerContext([2])
    root8 = ctx.sqrt_int(8)  # sqrt(8) = 2*sqrt(2)
    assert root8 * root8 == 8
    assert ctx.sqrt_int(9).to_gaussian() == GaussianRational(3)
    with pytest.raises(ValueError):
        ctx.sqrt_int(3)  # sqrt(3) not adjoined


# -- elements --------------------------------------------------------------------


def _sqrt(n):
    ctx = TowerContext([squarefree_split(n)[1]]) if squarefree_split(n)[1] > 1 else TowerContext()
    return ctx.adjoin(n).sqrt_int(n) if squarefree_split(n)[1] > 1 else ctx.from_scalar(squarefree_split(n)[0])


def test_difference_of_squares():
    root2 = _sqrt(2)
    assert (1 + root2) * (root2 - 1) == TowerContext().from_scalar(1)
    assert (1 + root2) * (1 - root2) == -1


def test_product_of_distinct_radicals():
    root2, root3 = _sqrt(2), _sqrt(3)
    product = root2 * root3
    assert product * product == 6
    assert product == _sqrt(6)


def test_invert():
    root2 = _sqrt(2)
    x = 1 + root2
    assert x * x.invert() == 1
    assert (ONE / x) * x == 1
    inv = x.invert()
    assert inv == root2 - 1
    with pytest.raises(ZeroDivisionError):
        (x - x).invert()


def test_to_gaussian():
    root2 = _sqrt(2)
    assert root2.to_gaussian() is None
    assert (root2 * root2).to_gaussian() == GaussianRational(2)
    assert (root2 - root2).to_gaussian() == GaussianRational(0)


def test_conjugate_acts_on_coefficients_only():
    root2 = _sqrt(2)
    x = I_UNIT * root2 + 1
    conj = x.conjugate()
    assert conj == 1 - I_UNIT * root2
    assert (x * conj).to_gaussian() == GaussianRational(3)  # 1 + 2 since (i*sqrt2)(-i*sqrt2) = 2


def test_mixed_context_arithmetic():
    a = _sqrt(2)
    b = _sqrt(3)
    total = a + b
    assert set(total.context.radicals) == {2, 3}
    assert (total - a) == b


def test_coerce_scalars_into_elements():
    root2 = _sqrt(2)
    assert (root2 + 0) == root2
    assert root2 * 2 - root2 == root2
    assert (Fraction(1, 2) * root2) * 2 == root2


# -- text round-trip ---------------------------------------------------------------


def test_parse_tower_pinned():
    x = parse_tower("1/2*sqrt(2)+3i*sqrt(6)")
    root2, root6 = _sqrt(2), _sqrt(6)
    assert x == Fraction(1, 2) * root2 + GaussianRational(0, 3) * root6
    assert parse_tower("2") == TowerContext().from_scalar(2)
    assert parse_tower("sqrt(2)") == root2


def test_format_parse_round_trip():
    root2, root3 = _sqrt(2), _sqrt(3)
    for x in (
        root2,
        -root2,
        1 + root2,
        Fraction(1, 2) * root2 + GaussianRational(0, 3) * root3,
        root2 * 0,
    ):
        assert parse_tower(format_tower(x)) == x
        assert " " not in format_tower(x)


@st.composite
def tower_elements(draw):
    ctx = TowerContext([2, 3])
    keys = [frozenset(), frozenset((2,)), frozenset((3,)), frozenset((2, 3))]
    small = st.fractions(min_value=-4, max_value=4, max_denominator=4)
    coeffs = {}
    for key in keys:
        if draw(st.booleans()):
            coeffs[key] = GaussianRational(draw(small), draw(small))
    return TowerElement(coeffs, ctx)


@given(tower_elements(), tower_elements(), tower_elements())
def test_tower_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(tower_elements())
def test_tower_inverse_property(a):
    if a == 0:
        return
    assert a * a.invert() == 1


@given(tower_elements())
def test_tower_text_round_trip(a):
    assert parse_tower(format_tower(a)) == a
