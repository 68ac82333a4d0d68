"""Canonical summand descriptors: factories, materialization, transforms."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tricanon import (
    FAMILIES,
    INFINITY,
    PAIR_FAMILIES,
    CanonicalDecomposition,
    GaussianRational,
    Matrix,
    ParseError,
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
    sym_skew_split,
    ss2n,
    ssnew,
    sss1n,
)

from _support import make_rng, random_matrix

I_ = GaussianRational(0, 1)
HALF = Fraction(1, 2)


def mat(rows):
    return Matrix(rows)


def assert_single(descriptor, rows):
    assert materialize(descriptor) == mat(rows)


def assert_pair(descriptor, first_rows, second_rows):
    first, second = materialize(descriptor)
    assert first == mat(first_rows)
    assert second == mat(second_rows)


# -- pinned materializations ----------------------------------------------------


class TestMaterializeSingle:
    def test_cm1(self):
        assert_single(cm1(2, HALF), [[0, 1], [HALF, 0]])
        assert_single(cm1(2, 0), [[0, 1], [0, 0]])
        assert_single(
            cm1(4, 3),  # normalized to 1/3
            [
                [0, 1, 0, 0],
                [Fraction(1, 3), 0, 1, 0],
                [0, Fraction(1, 3), 0, 1],
                [0, 0, Fraction(1, 3), 0],
            ],
        )

    def test_cm2(self):
        assert_single(cm2(1, 1), [[1]])
        assert_single(cm2(2, 0), [[0, 1], [-1, 0]])
        assert_single(cm2(2, 1), [[1, 1], [-1, 0]])
        assert_single(
            cm2(3, 0), [[0, 1, 0], [-1, 0, 1], [0, 1, 0]]
        )

    def test_cm3(self):
        assert_single(
            cm3(4),
            [[0, 1, 0, 0], [1, 0, 1, 0], [0, -1, 0, 1], [0, 0, 1, 0]],
        )

    def test_cmi1(self):
        assert_single(cmi1(2, 0), [[0, 1], [0, 0]])
        assert_single(cmi1(3, 0), [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert_single(cmi1(2, 2), [[0, 1], [HALF, 0]])

    def test_cmi2(self):
        assert_single(cmi2(1, I_), [[I_]])
        assert_single(cmi2(2, I_), [[I_, I_], [-I_, 0]])
        mu = GaussianRational(Fraction(3, 5), Fraction(4, 5))
        assert_single(cmi2(1, mu), [[mu]])


class TestMaterializePairs:
    def test_sss1n(self):
        assert_pair(sss1n(2, 1, 0), [[0, 1], [1, 0]], [[1, 0], [0, 0]])
        assert_pair(
            sss1n(3, 0, 0),
            [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        )
        assert_pair(sss1n(2, 1, 5), [[0, 1], [1, 0]], [[1, 5], [5, 0]])

    def test_ss2n(self):
        assert_pair(ss2n(1, 5), [[5**0]], [[5]])
        assert_pair(
            ss2n(3, 2),
            [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
            [[2, 1, 0], [1, 0, 2], [0, 2, 0]],
        )
        assert_pair(ss2n(2, 0), [[1, 0], [0, 0]], [[0, 1], [1, 0]])

    def test_lyg(self):
        first, second = materialize(lyg(2, 3))
        assert first == Matrix.identity(2)
        assert second == Matrix.diagonal([3, 3]) + build_N(2)

    def test_nn_ident(self):
        first, second = materialize(nn_ident(2))
        assert first == build_N(2)
        assert second == Matrix.identity(2)

    def test_ssnew(self):
        assert_pair(
            ssnew(3),
            [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        )

    def test_sc1(self):
        assert_pair(sc1(2, 1), [[0, 1], [1, 0]], [[0, 1], [-1, 0]])
        assert_pair(sc1(2, 2), [[0, 1], [1, 0]], [[0, 2], [-2, 0]])

    def test_sc2(self):
        assert_pair(sc2(1, 1), [[1]], [[0]])
        assert_pair(sc2(1, 0), [[0]], [[0]])
        assert_pair(sc2(2, 1), [[1, 0], [0, 0]], [[0, 1], [-1, 0]])

    def test_sc3(self):
        assert_pair(
            sc3(4),
            [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
            [[0, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 0]],
        )

    def test_cc1(self):
        assert_pair(cc1(2, 7), [[0, 1], [-1, 0]], [[0, 7], [-7, 0]])
        assert_pair(cc1(2, 0), [[0, 1], [-1, 0]], [[0, 0], [0, 0]])

    def test_cc23(self):
        assert_pair(cc23(2), [[0, 0], [0, 0]], [[0, 1], [-1, 0]])
        assert_pair(cc23(1), [[0]], [[0]])
        assert_pair(
            cc23(3),
            [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
            [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
        )

    def test_he1(self):
        assert_pair(he1(2, I_), [[0, 1], [1, 0]], [[0, I_], [-I_, 0]])
        mu = GaussianRational(1, 1)
        first, second = materialize(he1(2, mu))
        assert second == mat([[0, mu], [mu.conjugate(), 0]])
        assert first.is_symmetric() and second.is_hermitian()

    def test_he2_rational(self):
        assert_pair(he2(1, Fraction(4, 3)), [[Fraction(3, 5)]], [[Fraction(4, 5)]])
        assert_pair(he2(1, 0), [[1]], [[0]])
        assert_pair(he2(2, INFINITY), [[1, 0], [0, 0]], [[0, -1], [-1, 0]])
        assert_pair(he2(1, INFINITY), [[0]], [[1]])

    def test_he2_tower_entries(self):
        # 1 + 2^2 = 5 is not a rational square: entries live in Q(i, sqrt 5).
        first, second = materialize(he2(2, 2))
        assert first.is_hermitian() and second.is_hermitian()
        # b = 1/sqrt(5), a = -2b; corner of first is a, of second is b.
        a = first[0, 0]
        b = second[0, 0]
        assert a == -2 * b
        assert a * a + b * b == GaussianRational(1)

    def test_he2_odd_tower(self):
        first, second = materialize(he2(3, 2))
        a = first[0, 0]
        b = second[0, 0]
        assert b == 2 * a
        assert a * a + b * b == GaussianRational(1)

    def test_pair_families_match_materialization_arity(self):
        for family in FAMILIES:
            descriptor = _sample_descriptor(family)
            value = materialize(descriptor)
            if family in PAIR_FAMILIES:
                assert isinstance(value, tuple) and len(value) == 2
            else:
                assert isinstance(value, Matrix)


def _sample_descriptor(family):
    samples = {
        "CM1": cm1(2, 2),
        "CM2": cm2(1, 1),
        "CM3": cm3(4),
        "CMI1": cmi1(2, 2),
        "CMI2": cmi2(1, I_),
        "SSS1N": sss1n(1, 0, 0),
        "SS2N": ss2n(1, 1),
        "LYG": lyg(2, 0),
        "NN_IDENT": nn_ident(2),
        "SSNEW": ssnew(3),
        "SC1": sc1(2, 1),
        "SC2": sc2(1, 0),
        "SC3": sc3(4),
        "CC1": cc1(2, 0),
        "CC23": cc23(1),
        "HE1": he1(1, I_),
        "HE2": he2(1, 0),
    }
    return samples[family]


# -- factory validation -----------------------------------------------------------


class TestFactoryValidation:
    def test_cm1(self):
        with pytest.raises(ValueError):
            cm1(3, 2)
        with pytest.raises(ValueError):
            cm1(0, 2)
        with pytest.raises(ValueError):
            cm1(2, 1)
        with pytest.raises(ValueError):
            cm1(2, -1)
        with pytest.raises(TypeError):
            cm1(2, "x")

    def test_cm2_cm3(self):
        with pytest.raises(ValueError):
            cm2(2, 2)
        with pytest.raises(ValueError):
            cm2(4, 0)
        assert cm2(4, 1).eps == 1
        with pytest.raises(ValueError):
            cm3(2)
        with pytest.raises(ValueError):
            cm3(6)
        with pytest.raises(ValueError):
            cm3(0)

    def test_cmi1(self):
        with pytest.raises(ValueError):
            cmi1(3, 2)  # odd size forces lambda = 0
        with pytest.raises(ValueError):
            cmi1(2, I_)  # unit modulus
        with pytest.raises(ValueError):
            cmi1(2, GaussianRational(Fraction(3, 5), Fraction(4, 5)))
        assert cmi1(3, 0).lam == GaussianRational(0)

    def test_cmi2(self):
        with pytest.raises(ValueError):
            cmi2(1, 2)
        with pytest.raises(ValueError):
            cmi2(1, 0)
        assert cmi2(2, -I_).mu == -I_

    def test_sss1n(self):
        with pytest.raises(ValueError):
            sss1n(2, 0, 0)  # even size forces eps = 1
        with pytest.raises(ValueError):
            sss1n(3, 1, 2)  # odd size forces lambda = 0
        with pytest.raises(ValueError):
            sss1n(1, 2, 0)
        assert sss1n(2, 1, 7).lam == GaussianRational(7)

    def test_ss2n(self):
        with pytest.raises(ValueError):
            ss2n(2, 1)  # even size forces lambda = 0
        assert ss2n(2, 0).size == 2

    def test_sc_families(self):
        with pytest.raises(ValueError):
            sc1(3, 1)
        with pytest.raises(ValueError):
            sc1(2, 0)
        with pytest.raises(ValueError):
            sc2(4, 0)
        with pytest.raises(ValueError):
            sc2(1, 5)
        with pytest.raises(ValueError):
            sc3(5)

    def test_cc_families(self):
        with pytest.raises(ValueError):
            cc1(3, 1)
        assert cc1(2, 0).lam == GaussianRational(0)
        assert cc23(1).size == 1

    def test_he1(self):
        with pytest.raises(ValueError):
            he1(3, 2)  # odd size needs mu = +-i
        with pytest.raises(ValueError):
            he1(2, 3)  # even size needs im(mu) != 0
        assert he1(3, -I_).mu == I_

    def test_he2(self):
        with pytest.raises(ValueError):
            he2(1, I_)  # c must be real
        assert he2(1, INFINITY).c is INFINITY
        assert he2(2, Fraction(-7, 2)).c == GaussianRational(Fraction(-7, 2))

    def test_ssnew(self):
        with pytest.raises(ValueError):
            ssnew(2)

    def test_descriptor_core_validation(self):
        with pytest.raises(ValueError):
            SummandDescriptor("BOGUS", 1)
        with pytest.raises(ValueError):
            SummandDescriptor("CM2", 0, eps=1)
        with pytest.raises(ValueError):
            SummandDescriptor("CM1", 2, lam=GaussianRational(2), sign_determined=False)
        # the three ambiguous families may carry sign_determined = False
        assert not cmi2(1, I_, sign_determined=False).sign_determined
        assert not he1(1, I_, sign_determined=False).sign_determined
        assert not he2(1, 0, sign_determined=False).sign_determined


# -- representative normalization ---------------------------------------------------


class TestNormalization:
    def test_cm1_prefers_lex_smaller_of_pair(self):
        assert cm1(2, 2).lam == GaussianRational(HALF)
        assert cm1(2, HALF).lam == GaussianRational(HALF)
        assert cm1(2, Fraction(-1, 2)).lam == GaussianRational(-2)
        assert cm1(2, -2).lam == GaussianRational(-2)
        assert cm1(2, I_).lam == -I_
        assert cm1(2, 0).lam == GaussianRational(0)

    def test_cmi1_prefers_modulus_inside_unit_disc(self):
        assert cmi1(2, 2).lam == GaussianRational(HALF)
        one_plus_i = GaussianRational(1, 1)
        assert cmi1(2, one_plus_i).lam == GaussianRational(HALF, HALF)
        small = GaussianRational(HALF, HALF)
        assert cmi1(2, small).lam == small

    def test_sc1_prefers_lex_larger_sign(self):
        assert sc1(2, -1).lam == GaussianRational(1)
        assert sc1(2, 1).lam == GaussianRational(1)
        assert sc1(2, -I_).lam == I_
        assert sc1(2, -2).lam == GaussianRational(2)

    def test_he1_prefers_upper_half_plane(self):
        assert he1(2, -I_).mu == I_
        assert he1(2, GaussianRational(1, -1)).mu == GaussianRational(1, 1)
        assert he1(3, -I_).mu == I_
        assert he1(3, I_).mu == I_

    def test_cmi2_mu_not_normalized(self):
        assert cmi2(1, -I_).mu == -I_
        assert cmi2(1, I_).mu == I_


# -- structural transforms -----------------------------------------------------------


class TestPTransform:
    def test_orders_are_permutations(self):
        for n in range(1, 11):
            rows, cols = p_orders(n)
            assert sorted(rows) == list(range(n))
            assert sorted(cols) == list(range(n))

    def test_agrees_with_permutation_matrices(self):
        rng = make_rng("p-transform")
        for n in range(1, 8):
            rows, cols = p_orders(n)
            p_row = Matrix.identity(n).permute_rows(rows)
            p_col = Matrix.identity(n).permute_cols(cols)
            a = _random_tridiagonal(rng, n)
            assert p_transform(a) == p_row * a * p_col

    def test_rejects_non_tridiagonal(self):
        full = mat([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
        with pytest.raises(ValueError):
            p_transform(full)
        with pytest.raises(ValueError):
            p_orders(0)

    def test_trivial_size(self):
        assert p_orders(1) == ([0], [0])
        a = mat([[5]])
        assert p_transform(a) == a


def _random_tridiagonal(rng, n):
    rows = [
        [
            rng.randint(-3, 3) if abs(r - c) <= 1 else 0
            for c in range(n)
        ]
        for r in range(n)
    ]
    return Matrix(rows)


class TestSplits:
    def test_sym_skew_pinned(self):
        sym, skew = sym_skew_split(mat([[0, 2], [0, 0]]))
        assert sym == mat([[0, 1], [1, 0]])
        assert skew == mat([[0, 1], [-1, 0]])

    def test_cartesian_pinned(self):
        first, second = cartesian_split(mat([[0, 2], [0, 0]]))
        assert first == mat([[0, 1], [1, 0]])
        assert second == mat([[0, -I_], [I_, 0]])

    def test_sym_skew_properties(self):
        rng = make_rng("splits-sym")
        for _ in range(5):
            a = random_matrix(rng, 3, 3)
            sym, skew = sym_skew_split(a)
            assert sym.is_symmetric()
            assert skew.is_skew_symmetric()
            assert sym + skew == a

    def test_cartesian_properties(self):
        rng = make_rng("splits-cartesian")
        for _ in range(5):
            a = random_matrix(rng, 3, 3)
            first, second = cartesian_split(a)
            assert first.is_hermitian()
            assert second.is_hermitian()
            assert first + I_ * second == a

    def test_require_square(self):
        with pytest.raises(ValueError):
            sym_skew_split(Matrix.zeros(2, 3))
        with pytest.raises(ValueError):
            cartesian_split(Matrix.zeros(2, 3))


class TestParameterMaps:
    def test_congruence_pinned(self):
        assert mu_from_lambda(3) == GaussianRational(Fraction(-1, 2))
        assert mu_from_lambda(0) == GaussianRational(1)
        assert lambda_from_mu(Fraction(-1, 2)) == GaussianRational(3)

    def test_congruence_self_inverse(self):
        for lam in (0, 2, Fraction(1, 3), I_, GaussianRational(1, 1)):
            mu = mu_from_lambda(lam)
            assert lambda_from_mu(mu) == GaussianRational._coerce(lam)

    def test_star_pinned(self):
        assert mu_from_lambda(3, "star_congruence") == I_ * HALF
        assert mu_from_lambda(2, "star_congruence") == I_ * Fraction(1, 3)
        assert mu_from_lambda(Fraction(-1, 2), "star_congruence") == -3 * I_
        assert mu_from_lambda(GaussianRational(1, 1), "star_congruence") == (
            GaussianRational(Fraction(2, 5), Fraction(1, 5))
        )
        assert mu_from_lambda(0, "star_congruence") == -I_

    def test_star_round_trip(self):
        for lam in (0, 3, Fraction(-1, 2), GaussianRational(1, 1), I_ * 2):
            mu = mu_from_lambda(lam, "star_congruence")
            assert lambda_from_mu(mu, "star_congruence") == GaussianRational._coerce(lam)

    def test_poles(self):
        with pytest.raises(ValueError):
            mu_from_lambda(-1)
        with pytest.raises(ValueError):
            mu_from_lambda(-1, "star_congruence")
        with pytest.raises(ValueError):
            lambda_from_mu(-1)
        with pytest.raises(ValueError):
            lambda_from_mu(I_, "star_congruence")
        with pytest.raises(ValueError):
            mu_from_lambda(0, "bogus")
        with pytest.raises(ValueError):
            lambda_from_mu(0, "bogus")


# -- descriptor text form --------------------------------------------------------


class TestDescriptorText:
    def test_format_pinned(self):
        assert str(cm1(2, 2)) == "CM1(n=2, lambda=1/2)"
        assert str(cm2(1, 1)) == "CM2(n=1, eps=1)"
        assert str(cm3(4)) == "CM3(n=4)"
        assert str(cmi2(2, I_, sign_determined=False)) == "CMI2(n=2, mu=i, sign=?)"
        assert str(he2(3, INFINITY)) == "HE2(n=3, c=inf)"
        assert str(he2(1, Fraction(4, 3), sign_determined=False)) == (
            "HE2(n=1, c=4/3, sign=?)"
        )
        assert str(sss1n(2, 1, 5)) == "SSS1N(n=2, lambda=5, eps=1)"

    def test_round_trip(self):
        samples = [
            cm1(2, 2),
            cm1(4, GaussianRational(HALF, Fraction(1, 3))),
            cm2(3, 0),
            cm3(8),
            cmi1(5, 0),
            cmi2(2, GaussianRational(Fraction(3, 5), Fraction(4, 5)), False),
            sss1n(3, 0, 0),
            ss2n(4, 0),
            lyg(3, GaussianRational(1, 1)),
            nn_ident(2),
            ssnew(5),
            sc1(2, -2),
            sc2(4, 1),
            sc3(4),
            cc1(6, I_),
            cc23(2),
            he1(2, GaussianRational(2, 3), False),
            he2(2, INFINITY, False),
            he2(1, Fraction(-7, 3)),
        ]
        for d in samples:
            assert parse_descriptor(format_descriptor(d)) == d

    def test_parse_sign_markers(self):
        plus = parse_descriptor("CMI2(n=2, mu=i, sign=+)")
        assert plus.mu == I_ and plus.sign_determined
        minus = parse_descriptor("CMI2(n=2, mu=i, sign=-)")
        assert minus.mu == -I_ and minus.sign_determined
        unknown = parse_descriptor("CMI2(n=2, mu=i, sign=?)")
        assert unknown.mu == I_ and not unknown.sign_determined
        # negation leaves parameters other than mu untouched
        he2_minus = parse_descriptor("HE2(n=1, c=4/3, sign=-)")
        assert he2_minus.c == GaussianRational(Fraction(4, 3))
        assert he2_minus.sign_determined

    def test_parse_whitespace_tolerant(self):
        assert parse_descriptor(" CM1( n=2 , lambda=1/2 ) ") == cm1(2, HALF)

    def test_parse_errors(self):
        bad = [
            "CM1",
            "CM1(lambda=2)",  # missing n
            "CM1(n=two, lambda=2)",
            "CM1(n=2, lambda=1)",  # factory rejects lambda = 1
            "BOGUS(n=1)",
            "CM1(n=2, lambda=2, lambda=3)",
            "CM2(n=2, eps=2)",
            "CM2(n=2, eps=0, sign=?)",  # not a sign-ambiguous family
            "CM1(n=2, lambda=2, junk=1)",
            "CM1(n=2, lambda)",
            "CMI2(n=2, mu=i, sign=!)",
            "HE2(n=1, c=i)",
            "",
        ]
        for text in bad:
            with pytest.raises(ParseError):
                parse_descriptor(text)


# -- sort order and decompositions --------------------------------------------------


class TestDecomposition:
    def test_family_order_dominates(self):
        d1 = cm1(2, 0)
        d2 = cm2(1, 1)
        assert descriptor_sort_key(d1) < descriptor_sort_key(d2)

    def test_size_then_parameters(self):
        assert descriptor_sort_key(cm2(1, 1)) < descriptor_sort_key(cm2(2, 0))
        assert descriptor_sort_key(cm1(2, 0)) < descriptor_sort_key(cm1(2, 2))

    def test_decomposition_sorts_and_sizes(self):
        dec = CanonicalDecomposition(
            "congruence", (cm2(2, 0), cm1(2, 0), cm2(1, 1))
        )
        assert dec.summands == (cm1(2, 0), cm2(1, 1), cm2(2, 0))
        assert dec.total_size() == 5
        assert str(dec) == (
            "congruence: {CM1(n=2, lambda=0), CM2(n=1, eps=1), CM2(n=2, eps=0)}"
        )

    def test_unknown_relation(self):
        with pytest.raises(ValueError):
            CanonicalDecomposition("bogus", ())


# -- the nilpotent symmetric building block ------------------------------------------


class TestBuildN:
    def test_pinned_small(self):
        assert build_N(1) == mat([[0]])
        n2 = build_N(2)
        assert n2 == mat([[1, I_], [I_, -1]])

    def test_pinned_three(self):
        n3 = build_N(3)
        assert n3[0, 0] == GaussianRational(2)
        assert n3[1, 1] == GaussianRational(0)
        assert n3[2, 2] == GaussianRational(-2)
        root = n3[0, 1]
        # off-diagonal entries are i*sqrt(2)
        assert root == n3[1, 0] == n3[1, 2] == n3[2, 1]
        assert root * root == GaussianRational(-2)
        assert n3[0, 2] == GaussianRational(0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_properties(self, n):
        m = build_N(n)
        assert m.shape == (n, n)
        assert m.is_symmetric()
        assert m.is_tridiagonal()
        assert m.rank() == n - 1
        power = Matrix.identity(n)
        for _ in range(n - 1):
            power = power * m
        if n > 1:
            assert power != Matrix.zeros(n, n)
        assert power * m == Matrix.zeros(n, n)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            build_N(0)


# -- property sweeps -------------------------------------------------------------


@given(st.integers(min_value=1, max_value=4))
def test_materialized_pairs_have_declared_symmetry(k):
    size = 2 * k
    sym_pair = materialize(sss1n(size, 1, 3))
    assert sym_pair[0].is_symmetric() and sym_pair[1].is_symmetric()
    sym_skew = materialize(sc1(size, 2))
    assert sym_skew[0].is_symmetric() and sym_skew[1].is_skew_symmetric()
    skew_skew = materialize(cc1(size, 3))
    assert skew_skew[0].is_skew_symmetric() and skew_skew[1].is_skew_symmetric()
    herm = materialize(he1(size, GaussianRational(1, 2)))
    assert herm[0].is_hermitian() and herm[1].is_hermitian()


@given(st.integers(min_value=1, max_value=5))
def test_single_families_are_tridiagonal(n):
    descriptors = [cmi1(n if n % 2 else n + 1, 0), cm2(n if n % 4 else n + 1, 1)]
    for d in descriptors:
        m = materialize(d)
        assert m.is_tridiagonal()
