from __future__ import annotations

import csv
import io
import subprocess
import sys
from pathlib import Path

import pytest

import binacc.cli
from binacc import OracleError
from binacc.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, argv: list[str]) -> str:
    assert main(argv) == 0
    return capsys.readouterr().out


def rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


class TestCoeffs:
    def test_rational_rows(self, capsys):
        assert run(capsys, ["coeffs", "--j", "1"]) == "1, 3/4, 1/4\n"
        assert run(capsys, ["coeffs", "--j", "0"]) == "1\n"
        assert (
            run(capsys, ["coeffs", "--j", "2", "--format", "rational"])
            == "1, 15/16, 11/16, 5/16, 1/16\n"
        )

    def test_decimal_format(self, capsys):
        out = run(capsys, ["coeffs", "--j", "1", "--format", "decimal", "--digits", "3"])
        assert out == "1.000, 0.750, 0.250\n"


class TestTableGoldens:
    CASES = {
        "table_q01.txt": ["table", "--r", "-1", "--q", "0.1"],
        "table_q05.txt": ["table", "--r", "-1", "--q", "0.5", "--n-max", "20", "--j-max", "5"],
        "table_q09.txt": ["table", "--r", "-1", "--q", "0.9", "--n-max", "6", "--j-max", "3"],
        "table_q10.txt": ["table", "--r", "-1", "--q", "1", "--n-max", "5", "--j-max", "2"],
        "table_q01.csv": ["table", "--r", "-1", "--q", "0.1", "--format", "csv"],
    }

    @pytest.mark.parametrize("name", sorted(CASES))
    def test_byte_identical(self, name, tmp_path):
        target = tmp_path / name
        assert main(self.CASES[name] + ["--out", str(target)]) == 0
        assert target.read_bytes() == (GOLDEN / name).read_bytes()

    def test_degenerate_series(self, capsys):
        out = run(capsys, ["table", "--r", "-1", "--q", "0", "--n-max", "3", "--j-max", "1"])
        cells = [c.rstrip("*") for line in out.splitlines()[1:] for c in line.split()[1:]]
        assert cells and set(cells) == {"1.000000"}

    def test_non_integer_exponent(self, capsys):
        out = run(capsys, ["table", "--r", "-0.5", "--q", "0.5", "--n-max", "4",
                           "--j-max", "2"])
        # s^1(1) = 0.8359375 exactly, a half-way decimal: rounds up by value
        assert "0.835938" in out
        assert "0.816695" in out  # s^2(4), heading for 1.5**-0.5 = 0.816497

    def test_marks_only_at_six_digits(self, capsys):
        out = run(capsys, ["table", "--r", "-1", "--q", "0.1", "--digits", "8"])
        assert "*" not in out
        out = run(capsys, ["table", "--r", "-1", "--q", "0.1", "--format", "csv",
                           "--digits", "8"])
        assert all(r["first_converged"] == "" for r in rows(out))

    def test_csv_marks_match_text_marks(self, capsys):
        out = run(capsys, ["table", "--r", "-1", "--q", "0.1", "--format", "csv"])
        marked = {r["n"]: r["first_converged"] for r in rows(out) if r["first_converged"]}
        assert marked == {"6": "S^0 S^1 S^2", "7": "S^3 S^4 S^5", "8": "S^6 S^7 S^8"}


class TestErrors:
    def test_exact_zero_is_emitted_as_zero(self, capsys):
        out = run(capsys, ["errors", "--r", "-10", "--q", "1", "--j-max", "8",
                           "--n-max", "5"])
        data = rows(out)
        accel = {r["index"]: r["relative_error"] for r in data if r["method"] == "accelerated"}
        assert accel["5"] == "0"
        assert accel["6"] == "0"
        assert float(accel["4"]) > 1.0

    def test_schema(self, capsys):
        out = run(capsys, ["errors", "--r", "-1", "--q", "0.5", "--j-max", "2",
                           "--n-max", "3"])
        assert out.splitlines()[0] == "q,index,method,relative_error"
        data = rows(out)
        assert {r["method"] for r in data} == {"level0", "accelerated"}
        assert len(data) == 4 + 3  # n = 0..3 plain rows, j = 0..2 accelerated rows

    def test_both_methods_converge_for_small_ratio(self, capsys):
        out = run(capsys, ["errors", "--r", "-0.5", "--q", "0.1"])
        best: dict[str, float] = {}
        for r in rows(out):
            err = float(r["relative_error"])
            best[r["method"]] = min(best.get(r["method"], 1.0), err)
        assert best["level0"] < 1e-6
        assert best["accelerated"] < 1e-6

    def test_zero_ratio_is_error_free(self, capsys):
        out = run(capsys, ["errors", "--r", "-1", "--q", "0", "--j-max", "4",
                           "--n-max", "6"])
        assert all(r["relative_error"] == "0" for r in rows(out))


class TestLnCommand:
    def test_default_grid(self, capsys):
        out = run(capsys, ["ln"])
        lines = out.splitlines()
        assert lines[0] == "q,exact,taylor,accelerated"
        assert len(lines) == 1 + 41  # q = 0.00, 0.05, ..., 2.00
        assert lines[1] == "0,0.000000,0.000000,0.000000"
        assert "1,0.693147,0.783333,0.694792" in lines

    def test_budget_is_respected(self, capsys):
        out = run(capsys, ["ln", "--terms", "3", "--q-min", "1", "--q-max", "1",
                           "--q-step", "1"])
        [row] = rows(out)
        assert row["taylor"] == f"{1.0 - 0.5 + 1.0 / 3.0:.6f}"


class TestBetaCommand:
    def test_schema_and_zero_row(self, capsys):
        out = run(capsys, ["beta", "--x-max", "0.1", "--x-step", "0.05"])
        lines = out.splitlines()
        assert lines[0] == (
            "x,oracle,binomial,continued_fraction,accelerated,"
            "err_binomial,err_cf,err_accelerated"
        )
        assert lines[1] == "0,0,0,0,0,0,0,0"
        assert len(lines) == 1 + 3  # x = 0, 0.05, 0.1

    def test_small_x_favours_continued_fraction(self, capsys):
        out = run(capsys, ["beta", "--x-min", "0.05", "--x-max", "0.05",
                           "--x-step", "1e-3"])
        [row] = rows(out)
        err_cf = float(row["err_cf"])
        assert err_cf <= float(row["err_binomial"])
        assert err_cf <= float(row["err_accelerated"])

    def test_oracle_failure_exit_code(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise OracleError("forced failure")

        monkeypatch.setattr(binacc.cli, "beta_quadrature_oracle", boom)
        assert main(["beta", "--x-max", "0.1", "--x-step", "0.05"]) == 3
        captured = capsys.readouterr()
        assert "forced failure" in captured.err


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["coeffs", "--j", "65"],
            ["coeffs", "--j", "-1"],
            ["table", "--r", "-1", "--q", "0.1", "--digits", "0"],
            ["table", "--r", "-1", "--q", "0.1", "--digits", "16"],
            ["table", "--r", "-1", "--q", "-0.5"],
            ["table", "--r", "-1", "--q", "0.1", "--n-max", "2", "--j-max", "3"],
            ["table", "--r", "x", "--q", "0.1"],
            ["errors", "--r", "-1", "--q", "0.1", "-0.5"],
            ["ln", "--terms", "4"],
            ["ln", "--q-step", "0"],
            ["beta", "--x-max", "1.5"],
            ["beta", "--terms", "6"],
            ["beta", "--a", "0"],
            ["beta", "--tol", "1e-16"],
        ],
    )
    def test_exit_code_two(self, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


class TestOutput:
    def test_file_output_matches_stdout(self, capsys, tmp_path):
        text = run(capsys, ["coeffs", "--j", "3"])
        target = tmp_path / "row.txt"
        assert main(["coeffs", "--j", "3", "--out", str(target)]) == 0
        assert target.read_text(encoding="utf-8") == text

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "binacc", "coeffs", "--j", "1"],
            capture_output=True,
            text=True,
            check=True,
        )
        assert proc.stdout == "1, 3/4, 1/4\n"
