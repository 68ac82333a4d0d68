"""Command-line interface: pencil decomposition, canonicalization, witnesses.

File format: a matrix starts with a header line ``rows cols`` followed by the
entries in row-major order as whitespace-separated scalar tokens; multiple
matrices in one file are separated by a line containing only ``---``.

Exit codes: 0 success, 2 parse error, 3 field limitation (an eigenvalue or
square root lies outside Q(i)), 4 structural precondition violation,
5 inputs not equivalent, 1 unexpected internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .canonicalize import (
    canon_congruence,
    canon_pair_hermitian,
    canon_pair_skew_skew,
    canon_pair_sym_skew,
    canon_pair_sym_sym,
    canon_star_congruence,
    verify_table,
)
from .errors import (
    CanonicalFormError,
    FieldLimitationError,
    NotEquivalent,
    ParseError,
    StructureError,
)
from .field import GaussianRational, format_scalar, parse_scalar
from .matrix import Matrix
from .pencil import kronecker_decompose
from .summands import (
    INFINITY,
    CanonicalDecomposition,
    SummandDescriptor,
    format_descriptor,
    materialize,
)
from .tower import parse_tower
from .witness import upgrade_to_congruence
from . import table_samples

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_FIELD = 3
EXIT_STRUCTURE = 4
EXIT_NOT_EQUIVALENT = 5


# ---------------------------------------------------------------------------
# Matrix file format.
# ---------------------------------------------------------------------------


def _parse_token(token: str):
    if "sqrt(" in token:
        return parse_tower(token)
    return parse_scalar(token)


def parse_matrix_text(text: str) -> list[Matrix]:
    """Parse one or more ``---``-separated matrices from file text."""
    sections: list[list[str]] = [[]]
    for line in text.splitlines():
        if line.strip() == "---":
            sections.append([])
        else:
            sections[-1].append(line)
    matrices = []
    for section in sections:
        lines = [line for line in section if line.strip()]
        if not lines:
            raise ParseError("empty matrix section")
        header = lines[0].split()
        if len(header) != 2:
            raise ParseError(f"malformed header line: {lines[0].strip()!r}")
        try:
            rows, cols = int(header[0]), int(header[1])
        except ValueError:
            raise ParseError(f"malformed header line: {lines[0].strip()!r}") from None
        if rows < 0 or cols < 0:
            raise ParseError("matrix dimensions must be nonnegative")
        tokens = [token for line in lines[1:] for token in line.split()]
        if len(tokens) != rows * cols:
            raise ParseError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(tokens)}"
            )
        values = [_parse_token(token) for token in tokens]
        data = [values[r * cols : (r + 1) * cols] for r in range(rows)]
        matrices.append(Matrix(data, rows, cols))
    return matrices


def format_matrix(matrix: Matrix) -> str:
    """Serialize one matrix in the file format (header plus entry rows)."""
    lines = [f"{matrix.rows} {matrix.cols}"]
    for r in range(matrix.rows):
        lines.append(" ".join(str(entry) for entry in matrix.row(r)))
    return "\n".join(lines)


def format_matrix_file(matrices) -> str:
    return "\n---\n".join(format_matrix(m) for m in matrices) + "\n"


def _read_matrices(path: str) -> list[Matrix]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_matrix_text(text)


def _require_arity(matrices: list[Matrix], count: int, what: str):
    if len(matrices) != count:
        raise StructureError(
            f"{what} requires {count} matrix section(s), the file has {len(matrices)}"
        )


# ---------------------------------------------------------------------------
# Reports.
# ---------------------------------------------------------------------------

_AMBIGUITY_NOTE = (
    "summands marked sign=? are determined only up to multiplication "
    "of the summand by -1"
)


def _decomposition_notes(decomposition: CanonicalDecomposition) -> list[str]:
    if any(not d.sign_determined for d in decomposition.summands):
        return [_AMBIGUITY_NOTE]
    return []


def _summand_json(d: SummandDescriptor) -> dict:
    params = {}
    if d.lam is not None:
        params["lambda"] = format_scalar(d.lam)
    if d.eps is not None:
        params["eps"] = d.eps
    if d.mu is not None:
        params["mu"] = format_scalar(d.mu)
    if d.c is not None:
        params["c"] = "inf" if d.c is INFINITY else format_scalar(d.c)
    return {
        "family": d.family,
        "size": d.size,
        "params": params,
        "sign_determined": d.sign_determined,
        "text": format_descriptor(d),
    }


def _block_json(block) -> dict:
    return {
        "kind": block.kind,
        "size": block.size,
        "eigenvalue": None if block.eigenvalue is None else format_scalar(block.eigenvalue),
    }


def _print_report(decomposition: CanonicalDecomposition, blocks, show_matrices: bool):
    print(f"relation: {decomposition.relation}")
    print("summands:")
    for d in decomposition.summands:
        print(f"  {format_descriptor(d)}")
    print("blocks:")
    for block in blocks:
        print(f"  {block.label()}")
    notes = _decomposition_notes(decomposition)
    if notes:
        print("notes:")
        for note in notes:
            print(f"  {note}")
    if show_matrices:
        print("materialized:")
        for d in decomposition.summands:
            print(format_descriptor(d))
            result = materialize(d)
            if isinstance(result, tuple):
                print(format_matrix_file(result), end="")
            else:
                print(format_matrix_file([result]), end="")


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------


def _cmd_kronecker(args) -> int:
    matrices = _read_matrices(args.file)
    _require_arity(matrices, 2, "kronecker")
    form = kronecker_decompose(matrices[0], matrices[1])
    for block in form.blocks:
        print(block.label())
    if args.witness:
        print("R:")
        print(format_matrix(form.r))
        print("S:")
        print(format_matrix(form.s))
    return EXIT_OK


_RELATIONS = {
    "congruence": (1, lambda ms: canon_congruence(ms[0])),
    "star": (1, lambda ms: canon_star_congruence(ms[0])),
    "sym-sym": (2, lambda ms: canon_pair_sym_sym(ms[0], ms[1], form="first")),
    "sym-sym-second": (2, lambda ms: canon_pair_sym_sym(ms[0], ms[1], form="second")),
    "sym-skew": (2, lambda ms: canon_pair_sym_skew(ms[0], ms[1])),
    "skew-skew": (2, lambda ms: canon_pair_skew_skew(ms[0], ms[1])),
    "herm-herm": (2, lambda ms: canon_pair_hermitian(ms[0], ms[1])),
}


def _pencil_for_relation(relation: str, matrices: list[Matrix]):
    if relation == "congruence":
        return matrices[0].transpose(), matrices[0]
    if relation == "star":
        return matrices[0].conjugate_transpose(), matrices[0]
    return matrices[0], matrices[1]


def _cmd_canon(args) -> int:
    arity, runner = _RELATIONS[args.relation]
    matrices = _read_matrices(args.file)
    _require_arity(matrices, arity, f"canon --relation {args.relation}")
    decomposition = runner(matrices)
    blocks = kronecker_decompose(*_pencil_for_relation(args.relation, matrices)).blocks
    if args.json:
        payload = {
            "relation": decomposition.relation,
            "summands": [_summand_json(d) for d in decomposition.summands],
            "blocks": [_block_json(b) for b in blocks],
            "notes": _decomposition_notes(decomposition),
        }
        print(json.dumps(payload, indent=2))
    else:
        _print_report(decomposition, blocks, args.materialize)
    return EXIT_OK


def _cmd_witness(args) -> int:
    matrices = _read_matrices(args.file)
    _require_arity(matrices, 4, "witness")
    a, b, a_target, b_target = matrices
    first = kronecker_decompose(a, b)
    second = kronecker_decompose(a_target, b_target)
    if first.blocks != second.blocks:
        raise NotEquivalent(
            "pairs are not equivalent; block multisets differ: "
            + "; ".join(block.label() for block in first.blocks)
            + " vs "
            + "; ".join(block.label() for block in second.blocks)
        )
    # first: R1 A S1 = C = R2 A' S2, so A' = R2^{-1} R1 A S1 S2^{-1}; transpose
    # the left witness to match the congruence-upgrade convention R^T A S.
    r = (second.r.inverse() * first.r).transpose()
    s = first.s * second.s.inverse()
    n = upgrade_to_congruence(a, b, a_target, b_target, r, s)
    print("blocks:")
    for block in first.blocks:
        print(f"  {block.label()}")
    print("N:")
    print(format_matrix(n))
    print("verification: OK")
    return EXIT_OK


def _cmd_verify_tables(args) -> int:
    if args.max_size < 1:
        raise StructureError("--max-size must be at least 1")
    failures = 0
    total = 0
    for descriptor in table_samples.sample_descriptors(args.max_size):
        total += 1
        ok = verify_table(descriptor)
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'} {format_descriptor(descriptor)}")
    print(f"{total - failures}/{total} table rows verified")
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricanon",
        description=(
            "Exact tridiagonal canonical forms of matrices and matrix pairs "
            "under congruence and *congruence"
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    kronecker = subparsers.add_parser(
        "kronecker", help="Kronecker block structure of a matrix pencil"
    )
    kronecker.add_argument("file", help="matrix file with the two pencil members")
    kronecker.add_argument(
        "--witness", action="store_true", help="also print the reducing matrices R, S"
    )
    kronecker.set_defaults(func=_cmd_kronecker)

    canon = subparsers.add_parser(
        "canon", help="canonical decomposition of a matrix or pair"
    )
    canon.add_argument(
        "--relation",
        required=True,
        choices=sorted(_RELATIONS),
        help="equivalence relation to canonicalize under",
    )
    canon.add_argument("--materialize", action="store_true", help="print the canonical matrices")
    canon.add_argument("--json", action="store_true", help="machine-readable output")
    canon.add_argument("file", help="matrix file (one matrix, or a pair)")
    canon.set_defaults(func=_cmd_canon)

    witness = subparsers.add_parser(
        "witness", help="congruence witness N between two equivalent pairs"
    )
    witness.add_argument("file", help="matrix file with four sections: A, B, A', B'")
    witness.set_defaults(func=_cmd_witness)

    verify = subparsers.add_parser(
        "verify-tables", help="re-derive every family's pencil block table"
    )
    verify.add_argument("--max-size", type=int, required=True, help="largest summand size")
    verify.set_defaults(func=_cmd_verify_tables)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FieldLimitationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except StructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    except NotEquivalent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_EQUIVALENT
    except (CanonicalFormError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
