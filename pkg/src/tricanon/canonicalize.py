"""Canonical decompositions of matrices and pairs via pencil block matching.

Each relation reduces to the Kronecker decomposition of an associated pencil:
``(A^T, A)`` for bilinear congruence, ``(A*, A)`` for sesquilinear congruence,
and the pair itself for the four pair relations.  The block multiset is then
matched against the family tables — each canonical summand owns a fixed block
pattern, and the patterns of distinct table rows are disjoint, so greedy
matching inverts the table uniquely.
"""

from __future__ import annotations

from collections import Counter

from .errors import (
    EigenvalueOutsideField,
    MalformedPencil,
    NotHermitian,
    NotSkewSymmetric,
    NotSymmetric,
    PencilNotCompatible,
)
from .field import I_UNIT, ONE, ZERO, format_scalar, sqrt_in_field
from .matrix import Matrix
from .pencil import (
    KIND_FINITE,
    KIND_INFINITE,
    KIND_LEFT,
    KIND_RIGHT,
    PencilBlock,
    _kronecker_blocks,
    kronecker_decompose,
)
from .summands import (
    INFINITY,
    CanonicalDecomposition,
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
    materialize,
    nn_ident,
    sc1,
    sc2,
    sc3,
    ss2n,
    sss1n,
    ssnew,
)


def _block_counter(blocks) -> Counter:
    return Counter(blocks)


def _pop_singular_pairs(counter: Counter, error_type):
    """Yield (size, count) for matched RightSingular/LeftSingular pairs.

    Removes the blocks from the counter; raises ``error_type`` when the right
    and left multiplicities disagree for some size.
    """
    sizes = sorted({b.size for b in counter if b.kind in (KIND_RIGHT, KIND_LEFT)})
    pairs = []
    for k in sizes:
        n_right = counter.pop(PencilBlock(KIND_RIGHT, k), 0)
        n_left = counter.pop(PencilBlock(KIND_LEFT, k), 0)
        if n_right != n_left:
            raise error_type(
                f"singular blocks of size {k} do not pair up "
                f"({n_right} right vs {n_left} left)"
            )
        if n_right:
            pairs.append((k, n_right))
    return pairs


def _sorted_finite_blocks(counter: Counter) -> list[PencilBlock]:
    return sorted(
        (b for b, count in counter.items() if count and b.kind == KIND_FINITE),
        key=PencilBlock.sort_key,
    )


def _infinite_sizes(counter: Counter) -> list[tuple[int, int]]:
    sizes = sorted(b.size for b in counter if counter[b] and b.kind == KIND_INFINITE)
    return [(k, counter.pop(PencilBlock(KIND_INFINITE, k))) for k in dict.fromkeys(sizes)]


def canon_congruence(a: Matrix) -> CanonicalDecomposition:
    """Canonical decomposition of a square matrix under congruence."""
    a._require_square("canon_congruence")
    counter = _block_counter(_kronecker_blocks(a.transpose(), a))
    out: list[SummandDescriptor] = []

    for k, count in _pop_singular_pairs(counter, MalformedPencil):
        out.extend(cm2(2 * k + 1, 0) for _ in range(count))

    for k, count in _infinite_sizes(counter):
        zero_count = counter.pop(PencilBlock(KIND_FINITE, k, ZERO), 0)
        if zero_count != count:
            raise MalformedPencil(
                f"infinite blocks of size {k} do not pair with zero-eigenvalue blocks"
            )
        out.extend(cm1(2 * k, ZERO) for _ in range(count))

    for block in _sorted_finite_blocks(counter):
        count = counter.get(block, 0)
        if not count:
            continue
        lam, k = block.eigenvalue, block.size
        if lam == ZERO:
            raise MalformedPencil(
                f"zero-eigenvalue block of size {k} has no infinite partner"
            )
        if lam == ONE:
            if k % 2:
                out.extend(cm2(k, 1) for _ in range(count))
            else:
                if count % 2:
                    raise MalformedPencil(
                        f"eigenvalue 1 blocks of even size {k} must occur in pairs"
                    )
                out.extend(cm3(2 * k) for _ in range(count // 2))
            counter[block] = 0
        elif lam == -ONE:
            if k % 2:
                if count % 2:
                    raise MalformedPencil(
                        f"eigenvalue -1 blocks of odd size {k} must occur in pairs"
                    )
                out.extend(cm2(2 * k, 0) for _ in range(count // 2))
            else:
                out.extend(cm2(k, 1) for _ in range(count))
            counter[block] = 0
        else:
            partner = PencilBlock(KIND_FINITE, k, ONE / lam)
            partner_count = counter.get(partner, 0)
            if partner_count != count:
                raise MalformedPencil(
                    f"blocks for eigenvalues {format_scalar(lam)} and its inverse "
                    f"(size {k}) do not pair up"
                )
            out.extend(cm1(2 * k, lam) for _ in range(count))
            counter[block] = 0
            counter[partner] = 0
    return CanonicalDecomposition("congruence", tuple(out))


def canon_star_congruence(a: Matrix) -> CanonicalDecomposition:
    """Canonical decomposition of a square matrix under *congruence."""
    a._require_square("canon_star_congruence")
    counter = _block_counter(_kronecker_blocks(a.conjugate_transpose(), a))
    out: list[SummandDescriptor] = []

    for k, count in _pop_singular_pairs(counter, MalformedPencil):
        out.extend(cmi1(2 * k + 1, ZERO) for _ in range(count))

    for k, count in _infinite_sizes(counter):
        zero_count = counter.pop(PencilBlock(KIND_FINITE, k, ZERO), 0)
        if zero_count != count:
            raise MalformedPencil(
                f"infinite blocks of size {k} do not pair with zero-eigenvalue blocks"
            )
        out.extend(cmi1(2 * k, ZERO) for _ in range(count))

    for block in _sorted_finite_blocks(counter):
        count = counter.get(block, 0)
        if not count:
            continue
        nu, k = block.eigenvalue, block.size
        norm = nu.modulus_squared()
        if norm == 0:
            raise MalformedPencil(
                f"zero-eigenvalue block of size {k} has no infinite partner"
            )
        if norm == 1:
            target = nu if k % 2 else -nu
            mu = sqrt_in_field(target)
            if mu is None:
                raise EigenvalueOutsideField(
                    f"unit eigenvalue {format_scalar(nu)} (size {k}) needs "
                    f"a square root of {format_scalar(target)} outside the field"
                )
            out.extend(cmi2(k, mu, sign_determined=False) for _ in range(count))
            counter[block] = 0
        else:
            partner = PencilBlock(KIND_FINITE, k, ONE / nu.conjugate())
            partner_count = counter.get(partner, 0)
            if partner_count != count:
                raise MalformedPencil(
                    f"blocks for eigenvalue {format_scalar(nu)} and its "
                    f"conjugate-inverse (size {k}) do not pair up"
                )
            out.extend(cmi1(2 * k, nu) for _ in range(count))
            counter[block] = 0
            counter[partner] = 0
    return CanonicalDecomposition("star_congruence", tuple(out))


def _check_pair_shapes(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise ValueError("pair members must share the same shape")


def canon_pair_sym_sym(a: Matrix, b: Matrix, form: str = "first") -> CanonicalDecomposition:
    """Canonical decomposition of a pair of symmetric matrices under congruence.

    ``form`` selects between the two published canonical shapes: ``"first"``
    yields SSS1N/SS2N summands, ``"second"`` yields LYG/NN_IDENT/SSNEW summands.
    """
    if form not in ("first", "second"):
        raise ValueError(f"form must be 'first' or 'second', got {form!r}")
    _check_pair_shapes(a, b)
    if not a.is_symmetric():
        raise NotSymmetric("first member of the pair is not symmetric")
    if not b.is_symmetric():
        raise NotSymmetric("second member of the pair is not symmetric")
    counter = _block_counter(_kronecker_blocks(a, b))
    out: list[SummandDescriptor] = []

    for k, count in _pop_singular_pairs(counter, MalformedPencil):
        maker = sss1n(2 * k + 1, 0, ZERO) if form == "first" else ssnew(2 * k + 1)
        out.extend(maker for _ in range(count))

    for k, count in _infinite_sizes(counter):
        if form == "second":
            out.extend(nn_ident(k) for _ in range(count))
        elif k % 2:
            out.extend(sss1n(k, 1, ZERO) for _ in range(count))
        else:
            out.extend(ss2n(k, ZERO) for _ in range(count))

    for block in _sorted_finite_blocks(counter):
        count = counter.pop(block)
        lam, k = block.eigenvalue, block.size
        if form == "second":
            out.extend(lyg(k, lam) for _ in range(count))
        elif k % 2:
            out.extend(ss2n(k, lam) for _ in range(count))
        else:
            out.extend(sss1n(k, 1, lam) for _ in range(count))
    return CanonicalDecomposition("pair_congruence", tuple(out))


def canon_pair_sym_skew(a: Matrix, b: Matrix) -> CanonicalDecomposition:
    """Canonical decomposition of a symmetric/skew-symmetric pair."""
    _check_pair_shapes(a, b)
    if not a.is_symmetric():
        raise NotSymmetric("first member of the pair is not symmetric")
    if not b.is_skew_symmetric():
        raise NotSkewSymmetric("second member of the pair is not skew-symmetric")
    counter = _block_counter(_kronecker_blocks(a, b))
    out: list[SummandDescriptor] = []

    for k, count in _pop_singular_pairs(counter, PencilNotCompatible):
        out.extend(sc2(2 * k + 1, 0) for _ in range(count))

    for k, count in _infinite_sizes(counter):
        if k % 2:
            if count % 2:
                raise PencilNotCompatible(
                    f"infinite blocks of odd size {k} must occur in pairs"
                )
            out.extend(sc2(2 * k, 0) for _ in range(count // 2))
        else:
            out.extend(sc2(k, 1) for _ in range(count))

    for block in _sorted_finite_blocks(counter):
        count = counter.get(block, 0)
        if not count:
            continue
        lam, k = block.eigenvalue, block.size
        if lam == ZERO:
            if k % 2:
                out.extend(sc2(k, 1) for _ in range(count))
            else:
                if count % 2:
                    raise PencilNotCompatible(
                        f"zero-eigenvalue blocks of even size {k} must occur in pairs"
                    )
                out.extend(sc3(2 * k) for _ in range(count // 2))
            counter[block] = 0
        else:
            partner = PencilBlock(KIND_FINITE, k, -lam)
            partner_count = counter.get(partner, 0)
            if partner_count != count:
                raise PencilNotCompatible(
                    f"blocks for eigenvalues {format_scalar(lam)} and its negative "
                    f"(size {k}) do not pair up"
                )
            out.extend(sc1(2 * k, lam) for _ in range(count))
            counter[block] = 0
            counter[partner] = 0
    return CanonicalDecomposition("pair_congruence", tuple(out))


def canon_pair_skew_skew(a: Matrix, b: Matrix) -> CanonicalDecomposition:
    """Canonical decomposition of a pair of skew-symmetric matrices."""
    _check_pair_shapes(a, b)
    if not a.is_skew_symmetric():
        raise NotSkewSymmetric("first member of the pair is not skew-symmetric")
    if not b.is_skew_symmetric():
        raise NotSkewSymmetric("second member of the pair is not skew-symmetric")
    counter = _block_counter(_kronecker_blocks(a, b))
    out: list[SummandDescriptor] = []

    for k, count in _pop_singular_pairs(counter, PencilNotCompatible):
        out.extend(cc23(2 * k + 1) for _ in range(count))

    for k, count in _infinite_sizes(counter):
        if count % 2:
            raise PencilNotCompatible(
                f"infinite blocks of size {k} must occur in pairs"
            )
        out.extend(cc23(2 * k) for _ in range(count // 2))

    for block in _sorted_finite_blocks(counter):
        count = counter.pop(block)
        if count % 2:
            raise PencilNotCompatible(
                f"blocks for eigenvalue {format_scalar(block.eigenvalue)} "
                f"(size {block.size}) must occur in pairs"
            )
        out.extend(cc1(2 * block.size, block.eigenvalue) for _ in range(count // 2))
    return CanonicalDecomposition("pair_congruence", tuple(out))


def canon_pair_hermitian(a: Matrix, b: Matrix) -> CanonicalDecomposition:
    """Canonical decomposition of a pair of Hermitian matrices under *congruence."""
    _check_pair_shapes(a, b)
    if not a.is_hermitian():
        raise NotHermitian("first member of the pair is not Hermitian")
    if not b.is_hermitian():
        raise NotHermitian("second member of the pair is not Hermitian")
    counter = _block_counter(_kronecker_blocks(a, b))
    out: list[SummandDescriptor] = []

    for k, count in _pop_singular_pairs(counter, PencilNotCompatible):
        out.extend(he1(2 * k + 1, I_UNIT, sign_determined=False) for _ in range(count))

    for k, count in _infinite_sizes(counter):
        out.extend(he2(k, INFINITY, sign_determined=False) for _ in range(count))

    for block in _sorted_finite_blocks(counter):
        count = counter.get(block, 0)
        if not count:
            continue
        mu, k = block.eigenvalue, block.size
        if mu.im == 0:
            out.extend(he2(k, mu, sign_determined=False) for _ in range(count))
            counter[block] = 0
        else:
            partner = PencilBlock(KIND_FINITE, k, mu.conjugate())
            partner_count = counter.get(partner, 0)
            if partner_count != count:
                raise PencilNotCompatible(
                    f"blocks for eigenvalue {format_scalar(mu)} and its conjugate "
                    f"(size {k}) do not pair up"
                )
            out.extend(he1(2 * k, mu, sign_determined=True) for _ in range(count))
            counter[block] = 0
            counter[partner] = 0
    return CanonicalDecomposition("pair_star_congruence", tuple(out))


# ---------------------------------------------------------------------------
# Forward direction: predicted pencil blocks of each summand.
# ---------------------------------------------------------------------------


def predicted_blocks(d: SummandDescriptor) -> tuple[PencilBlock, ...]:
    """The pencil block multiset each canonical summand is mapped to."""
    n, family = d.size, d.family
    if family == "CM1":
        k = n // 2
        if d.lam == ZERO:
            return (PencilBlock(KIND_FINITE, k, ZERO), PencilBlock(KIND_INFINITE, k))
        return (
            PencilBlock(KIND_FINITE, k, d.lam),
            PencilBlock(KIND_FINITE, k, ONE / d.lam),
        )
    if family == "CM2":
        if d.eps == 0:
            if n % 2:
                k = (n - 1) // 2
                return (PencilBlock(KIND_RIGHT, k), PencilBlock(KIND_LEFT, k))
            k = n // 2
            return (PencilBlock(KIND_FINITE, k, -ONE),) * 2
        eigenvalue = ONE if n % 2 else -ONE
        return (PencilBlock(KIND_FINITE, n, eigenvalue),)
    if family == "CM3":
        return (PencilBlock(KIND_FINITE, n // 2, ONE),) * 2
    if family == "CMI1":
        if n % 2:
            k = (n - 1) // 2
            return (PencilBlock(KIND_RIGHT, k), PencilBlock(KIND_LEFT, k))
        k = n // 2
        if d.lam == ZERO:
            return (PencilBlock(KIND_INFINITE, k), PencilBlock(KIND_FINITE, k, ZERO))
        return (
            PencilBlock(KIND_FINITE, k, d.lam),
            PencilBlock(KIND_FINITE, k, ONE / d.lam.conjugate()),
        )
    if family == "CMI2":
        nu = d.mu * d.mu
        if n % 2 == 0:
            nu = -nu
        return (PencilBlock(KIND_FINITE, n, nu),)
    if family == "SSS1N":
        if d.eps == 0:
            k = (n - 1) // 2
            return (PencilBlock(KIND_RIGHT, k), PencilBlock(KIND_LEFT, k))
        if n % 2:
            return (PencilBlock(KIND_INFINITE, n),)
        return (PencilBlock(KIND_FINITE, n, d.lam),)
    if family == "SS2N":
        if n % 2:
            return (PencilBlock(KIND_FINITE, n, d.lam),)
        return (PencilBlock(KIND_INFINITE, n),)
    if family == "LYG":
        return (PencilBlock(KIND_FINITE, n, d.lam),)
    if family == "NN_IDENT":
        return (PencilBlock(KIND_INFINITE, n),)
    if family == "SSNEW":
        k = (n - 1) // 2
        return (PencilBlock(KIND_RIGHT, k), PencilBlock(KIND_LEFT, k))
    if family == "SC1":
        k = n // 2
        return (
            PencilBlock(KIND_FINITE, k, d.lam),
            PencilBlock(KIND_FINITE, k, -d.lam),
        )
    if family == "SC2":
        if d.eps == 0:
            if n % 2:
                k = (n - 1) // 2
                return (PencilBlock(KIND_RIGHT, k), PencilBlock(KIND_LEFT, k))
            return (PencilBlock(KIND_INFINITE, n // 2),) * 2
        if n % 2:
            return (PencilBlock(KIND_FINITE, n, ZERO),)
        return (PencilBlock(KIND_INFINITE, n),)
    if family == "SC3":
        return (PencilBlock(KIND_FINITE, n // 2, ZERO),) * 2
    if family == "CC1":
        return (PencilBlock(KIND_FINITE, n // 2, d.lam),) * 2
    if family == "CC23":
        if n % 2:
            k = (n - 1) // 2
            return (PencilBlock(KIND_RIGHT, k), PencilBlock(KIND_LEFT, k))
        return (PencilBlock(KIND_INFINITE, n // 2),) * 2
    if family == "HE1":
        if n % 2:
            k = (n - 1) // 2
            return (PencilBlock(KIND_RIGHT, k), PencilBlock(KIND_LEFT, k))
        k = n // 2
        return (
            PencilBlock(KIND_FINITE, k, d.mu),
            PencilBlock(KIND_FINITE, k, d.mu.conjugate()),
        )
    if family == "HE2":
        if d.c is INFINITY:
            return (PencilBlock(KIND_INFINITE, n),)
        return (PencilBlock(KIND_FINITE, n, d.c),)
    raise ValueError(f"unknown family {family!r}")


def pencil_of(d: SummandDescriptor) -> tuple[Matrix, Matrix]:
    """The pencil whose Kronecker form classifies the summand."""
    materialized = materialize(d)
    if d.family in ("CM1", "CM2", "CM3"):
        return materialized.transpose(), materialized
    if d.family in ("CMI1", "CMI2"):
        return materialized.conjugate_transpose(), materialized
    return materialized


def verify_table(d: SummandDescriptor) -> bool:
    """Check that the summand's pencil decomposes into its predicted blocks."""
    a, b = pencil_of(d)
    form = kronecker_decompose(a, b)
    expected = tuple(sorted(predicted_blocks(d), key=PencilBlock.sort_key))
    return form.blocks == expected


#: Maps each family to the canonicalizer that reproduces it (used by reports).
FAMILY_RELATION = {
    "CM1": "congruence",
    "CM2": "congruence",
    "CM3": "congruence",
    "CMI1": "star_congruence",
    "CMI2": "star_congruence",
    "SSS1N": "pair_congruence",
    "SS2N": "pair_congruence",
    "LYG": "pair_congruence",
    "NN_IDENT": "pair_congruence",
    "SSNEW": "pair_congruence",
    "SC1": "pair_congruence",
    "SC2": "pair_congruence",
    "SC3": "pair_congruence",
    "CC1": "pair_congruence",
    "CC23": "pair_congruence",
    "HE1": "pair_star_congruence",
    "HE2": "pair_star_congruence",
}
