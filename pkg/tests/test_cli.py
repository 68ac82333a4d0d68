"""Command-line interface: file format, commands, exit codes."""

import json

import pytest

from tricanon import GaussianRational, Matrix, ParseError, materialize, he2
from tricanon.cli import (
    EXIT_FIELD,
    EXIT_NOT_EQUIVALENT,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_STRUCTURE,
    format_matrix,
    format_matrix_file,
    main,
    parse_matrix_text,
)

I_ = GaussianRational(0, 1)


def mat(rows):
    return Matrix(rows)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def write_matrices(tmp_path, name, matrices):
    return write(tmp_path, name, format_matrix_file(matrices))


# -- matrix file format ------------------------------------------------------------


class TestMatrixFormat:
    def test_parse_single(self):
        text = "2 2\n0 1\n3 0\n"
        (m,) = parse_matrix_text(text)
        assert m == mat([[0, 1], [3, 0]])

    def test_parse_multiple_sections(self):
        text = "1 1\n1\n---\n1 1\n2\n"
        first, second = parse_matrix_text(text)
        assert first == mat([[1]])
        assert second == mat([[2]])

    def test_parse_scalar_tokens(self):
        text = "1 3\n1/2 -3/2+1/5i i\n"
        (m,) = parse_matrix_text(text)
        assert m[0, 2] == I_

    def test_parse_tower_tokens(self):
        text = "1 2\nsqrt(5) 1/2*sqrt(2)\n"
        (m,) = parse_matrix_text(text)
        assert m[0, 0] * m[0, 0] == GaussianRational(5)

    def test_entries_spread_across_lines(self):
        text = "2 2\n0 1\n3\n0\n"
        (m,) = parse_matrix_text(text)
        assert m == mat([[0, 1], [3, 0]])

    def test_round_trip(self):
        matrices = [mat([[0, 1], [3, 0]]), mat([[I_]])]
        assert parse_matrix_text(format_matrix_file(matrices)) == matrices

    def test_round_trip_with_tower_entries(self):
        pair = materialize(he2(2, 2))  # entries contain sqrt(5)
        text = format_matrix_file(pair)
        assert "sqrt(5)" in text
        assert parse_matrix_text(text) == list(pair)

    def test_zero_dimension(self):
        (m,) = parse_matrix_text("0 0\n")
        assert m.shape == (0, 0)

    def test_parse_errors(self):
        bad = [
            "",
            "2\n1 2\n",  # malformed header
            "a b\n",  # non-integer header
            "-1 1\n",  # negative dimension
            "1 2\n1\n",  # wrong entry count
            "1 1\n1 2\n",  # too many entries
            "1 1\nfoo\n",  # bad token
            "1 1\n1\n---\n",  # trailing empty section
            "1 1\n1/0\n",  # zero denominator
        ]
        for text in bad:
            with pytest.raises(ParseError):
                parse_matrix_text(text)

    def test_format_matrix_header(self):
        assert format_matrix(mat([[1]])).splitlines()[0] == "1 1"


# -- kronecker command -------------------------------------------------------------


class TestKroneckerCommand:
    def test_block_labels(self, tmp_path, capsys):
        path = write_matrices(
            tmp_path, "pencil.txt", [Matrix.identity(2), mat([[3, 1], [0, 3]])]
        )
        assert main(["kronecker", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "FiniteEigen(3) size 2" in out

    def test_witness_output(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "pencil.txt", [mat([[2]]), mat([[1]])])
        assert main(["kronecker", "--witness", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "FiniteEigen(1/2) size 1" in out
        assert "R:" in out and "S:" in out

    def test_arity_error(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "single.txt", [mat([[1]])])
        assert main(["kronecker", path]) == EXIT_STRUCTURE
        assert "error:" in capsys.readouterr().err

    def test_outside_field(self, tmp_path, capsys):
        path = write_matrices(
            tmp_path, "pencil.txt", [Matrix.identity(2), mat([[0, 1], [-2, 0]])]
        )
        assert main(["kronecker", path]) == EXIT_FIELD
        assert "error:" in capsys.readouterr().err


# -- canon command -----------------------------------------------------------------


class TestCanonCommand:
    def test_congruence_report(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "a.txt", [mat([[0, 1], [3, 0]])])
        assert main(["canon", "--relation", "congruence", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "relation: congruence" in out
        assert "CM1(n=2, lambda=1/3)" in out
        assert "blocks:" in out

    def test_star_ambiguity_note(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "a.txt", [mat([[1]])])
        assert main(["canon", "--relation", "star", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "CMI2(n=1, mu=1, sign=?)" in out
        assert "notes:" in out
        assert "sign=?" in out

    def test_star_outside_field(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "a.txt", [mat([[GaussianRational(1, 1)]])])
        assert main(["canon", "--relation", "star", path]) == EXIT_FIELD
        assert "error:" in capsys.readouterr().err

    def test_json_payload(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "a.txt", [mat([[0, 1], [3, 0]])])
        assert main(["canon", "--relation", "congruence", "--json", path]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["relation"] == "congruence"
        (summand,) = payload["summands"]
        assert summand["family"] == "CM1"
        assert summand["size"] == 2
        assert summand["params"] == {"lambda": "1/3"}
        assert summand["sign_determined"] is True
        assert summand["text"] == "CM1(n=2, lambda=1/3)"
        (block_a, block_b) = payload["blocks"]
        assert {block_a["kind"], block_b["kind"]} == {"FiniteEigen"}
        assert payload["notes"] == []

    def test_materialize_flag(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "a.txt", [mat([[0, 1], [3, 0]])])
        code = main(["canon", "--relation", "congruence", "--materialize", path])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "materialized:" in out
        assert "2 2" in out  # the canonical matrix is printed in file format

    def test_pair_relation(self, tmp_path, capsys):
        sym = mat([[0, 1], [1, 0]])
        skew = mat([[0, 2], [-2, 0]])
        path = write_matrices(tmp_path, "pair.txt", [sym, skew])
        assert main(["canon", "--relation", "sym-skew", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "SC1(n=2, lambda=2)" in out

    def test_sym_skew_rejects_symmetric_second(self, tmp_path, capsys):
        sym = mat([[0, 1], [1, 0]])
        path = write_matrices(tmp_path, "pair.txt", [sym, sym])
        assert main(["canon", "--relation", "sym-skew", path]) == EXIT_STRUCTURE
        assert "error:" in capsys.readouterr().err

    def test_wrong_arity_for_pair(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "one.txt", [mat([[1]])])
        assert main(["canon", "--relation", "sym-sym", path]) == EXIT_STRUCTURE
        capsys.readouterr()

    def test_sym_sym_second_form(self, tmp_path, capsys):
        pair = [Matrix.identity(2), mat([[3, 0], [0, 3]])]
        path = write_matrices(tmp_path, "pair.txt", pair)
        assert main(["canon", "--relation", "sym-sym-second", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "LYG" in out

    def test_missing_file(self, tmp_path, capsys):
        missing = str(tmp_path / "missing.txt")
        assert main(["canon", "--relation", "congruence", missing]) == EXIT_PARSE
        assert "error:" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path, capsys):
        path = write(tmp_path, "bad.txt", "1 1\nnot-a-number\n")
        assert main(["canon", "--relation", "congruence", path]) == EXIT_PARSE
        capsys.readouterr()


# -- witness command ----------------------------------------------------------------


class TestWitnessCommand:
    def test_identical_pairs(self, tmp_path, capsys):
        a = Matrix.identity(1)
        b = mat([[0]])
        path = write_matrices(tmp_path, "four.txt", [a, b, a, b])
        assert main(["witness", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "N:" in out
        assert "verification: OK" in out

    def test_scaled_pair(self, tmp_path, capsys):
        a, b = mat([[1]]), mat([[0]])
        a2, b2 = mat([[4]]), mat([[0]])
        path = write_matrices(tmp_path, "four.txt", [a, b, a2, b2])
        assert main(["witness", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "N:" in out
        # N = [2] turns (1, 0) into (4, 0)
        assert "\n2" in out

    def test_not_equivalent(self, tmp_path, capsys):
        a = Matrix.identity(1)
        path = write_matrices(
            tmp_path, "four.txt", [a, mat([[1]]), a, mat([[2]])]
        )
        assert main(["witness", path]) == EXIT_NOT_EQUIVALENT
        err = capsys.readouterr().err
        assert "not equivalent" in err

    def test_sqrt_obstruction_is_field_error(self, tmp_path, capsys):
        a, b = mat([[1]]), mat([[0]])
        a2, b2 = mat([[2]]), mat([[0]])
        path = write_matrices(tmp_path, "four.txt", [a, b, a2, b2])
        assert main(["witness", path]) == EXIT_FIELD
        capsys.readouterr()

    def test_arity(self, tmp_path, capsys):
        path = write_matrices(tmp_path, "two.txt", [mat([[1]]), mat([[1]])])
        assert main(["witness", path]) == EXIT_STRUCTURE
        capsys.readouterr()


# -- verify-tables command -------------------------------------------------------------


class TestVerifyTables:
    def test_small_sweep_passes(self, capsys):
        assert main(["verify-tables", "--max-size", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        lines = [line for line in out.splitlines() if line]
        assert all(
            line.startswith("PASS") for line in lines[:-1]
        ), out
        assert "table rows verified" in lines[-1]
        verified, total = lines[-1].split()[0].split("/")
        assert verified == total

    def test_rejects_nonpositive_size(self, capsys):
        assert main(["verify-tables", "--max-size", "0"]) == EXIT_STRUCTURE
        capsys.readouterr()
