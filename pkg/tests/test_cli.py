import csv
import io
import json

import pytest

from qvitali.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    def test_exact_sum(self, capsys):
        assert run(capsys, "eval", "1/2 o+ 1/3", "--q", "1/2") == (0, "11/12\n", "")

    def test_zero(self, capsys):
        assert run(capsys, "eval", "0 o+ 0", "--q", "3/4")[:2] == (0, "0\n")

    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "eval", "1 o+", "--q", "1/2")
        assert code == 2 and out == ""
        assert "parse error: expected factor" in err

    def test_float_result(self, capsys):
        assert run(capsys, "eval", "qexp(2)", "--q", "1/2")[:2] == (0, "4\n")

    def test_lex_error_and_singular(self, capsys):
        code, _, err = run(capsys, "eval", "1 $ 2", "--q", "1/2")
        assert code == 2 and "column 3" in err
        assert run(capsys, "eval", "1 o- -2", "--q", "1/2")[0] == 2

    def test_json(self, capsys):
        code, out, _ = run(capsys, "eval", "1/2 o+ 1/3", "--q", "1/2", "--format", "json")
        assert code == 0 and json.loads(out)["value"] == "11/12"

    def test_bad_q(self, capsys):
        assert run(capsys, "eval", "1", "--q", "3/2")[0] == 2
        assert run(capsys, "eval", "1", "--q", "abc")[0] == 2


class TestMeasure:
    def test_unit_interval(self, capsys):
        assert run(capsys, "measure", "--q", "1/2", "--set", "[0,1]")[:2] == (0, "0.810930216216\n")

    def test_divergent(self, capsys):
        assert run(capsys, "measure", "--q", "1/2", "--set", "[-2,3]")[:2] == (0, "inf\n")

    def test_classical(self, capsys):
        assert run(capsys, "measure", "--q", "1", "--set", "[0,1],[2,3]")[:2] == (0, "2\n")

    def test_precision(self, capsys):
        assert run(capsys, "measure", "--q", "1/2", "--set", "[0,1]", "--precision", "4")[1] == "0.8109\n"

    def test_errors_name_interval(self, capsys):
        code, _, err = run(capsys, "measure", "--q", "1/2", "--set", "[-3,0]")
        assert code == 2 and "[-3,0]" in err
        assert run(capsys, "measure", "--q", "1/2", "--set", "[0,1")[0] == 2


class TestTranslateScale:
    def test_translate(self, capsys):
        code, out, _ = run(capsys, "translate", "--q", "1/2", "--set", "[0,1]", "--v", "1")
        assert code == 0
        assert "translated: [1,5/2]" in out
        assert "measure: 0.810930216216" in out
        assert "translated_measure: 0.810930216216" in out

    def test_scale(self, capsys):
        code, out, _ = run(capsys, "scale", "--q", "1/2", "--set", "[0,1]", "--alpha", "2", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["scaled"] == "[0,2]" and data["q_prime"] == "0"
        assert data["lhs_mu_q(alpha*A)"] == data["rhs_alpha*mu_q'(A)"] == "1.38629436112"

    def test_bad_alpha(self, capsys):
        assert run(capsys, "scale", "--q", "1/2", "--set", "[0,1]", "--alpha", "0")[0] == 2


class TestBounds:
    def test_classical_row(self, capsys):
        code, out, _ = run(capsys, "bounds", "--q-grid", "1:1:1", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert (rows[0]["q"], rows[0]["lower"], rows[0]["upper"]) == ("1", "1", "5")

    def test_three_quarters(self, capsys):
        out = run(capsys, "bounds", "--q-grid", "3/4:3/4:1", "--format", "json")[1]
        row = json.loads(out)["rows"][0]
        assert row["q"] == "0.75"
        assert float(row["lower"]) == pytest.approx(0.892574205257, rel=1e-11)
        assert float(row["upper"]) == pytest.approx(5.01105187398, rel=1e-11)

    def test_half_row_and_note(self, capsys):
        out = run(capsys, "bounds", "--q-grid", "1/2:1/2:1", "--format", "csv")[1]
        rows = list(csv.DictReader(io.StringIO(out)))
        assert (rows[0]["q"], rows[0]["lower"], rows[0]["upper"]) == ("0.5", "0.810930216216", "inf")
        assert rows[1]["q"] == "note" and "3*ln(4/3)" in rows[1]["status"]

    def test_grid(self, capsys):
        out = run(capsys, "bounds", "--q-grid", "1/2:1:1/10")[1]
        assert len([ln for ln in out.splitlines() if ln.startswith("q=")]) == 6

    @pytest.mark.parametrize("grid", ["2/5:1:1/10", "1/2:3/2:1/2", "1/2:1", "1/2:1:0"])
    def test_bad_grid(self, capsys, grid):
        assert run(capsys, "bounds", "--q-grid", grid)[0] == 2


class TestEnumerate:
    def test_prefix(self, capsys):
        assert run(capsys, "enumerate-rationals", "5")[1] == "0\n1\n-1\n1/2\n-1/2\n"

    def test_rejects_zero(self, capsys):
        assert run(capsys, "enumerate-rationals", "0")[0] == 2


class TestVerify:
    def test_vitali_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "vitali", "--cases", "1000", "--seed", "42")
        assert code == 0
        assert "FAIL" not in out

    def test_zero_cases(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "algebra", "--cases", "0")
        assert code == 2 and "cases must be ≥ 1" in err

    def test_deterministic(self, capsys):
        first = run(capsys, "verify", "--suite", "parser", "--cases", "50", "--seed", "7")
        second = run(capsys, "verify", "--suite", "parser", "--cases", "50", "--seed", "7")
        assert first == second

    def test_json_has_counterexample_field(self, capsys):
        out = run(capsys, "verify", "--suite", "algebra", "--cases", "20", "--format", "json")[1]
        data = json.loads(out)
        assert data["passed"] and all("counterexample" in r for r in data["results"])


def test_help_lists_flags(capsys):
    assert main(["measure", "--help"]) == 0
    out = capsys.readouterr().out
    for flag in ("--q", "--set", "--format", "--seed", "--cases", "--precision"):
        assert flag in out


def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 2
