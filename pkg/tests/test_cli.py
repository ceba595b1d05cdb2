import csv
import io
import json
import math
import subprocess
import sys

import pytest

from hypercubic_mahler.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, fmt_float, main, parse_int_list


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def usage(capsys, *argv):
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    capsys.readouterr()
    return info.value.code


class TestCompute:
    def test_closed_route_text(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "3", "--z", "6")
        assert code == EXIT_OK
        assert "route closed" in out and out.startswith("J_3(6) = ")

    def test_mahler_measure_trivial(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "1", "--k", "2", "--format", "json")
        rec = json.loads(out)
        assert code == EXIT_OK and rec["k"] == 2.0
        assert abs(rec["mahler_measure"]) < 1e-15

    def test_z_range_csv(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "2", "--z-range", "2", "4", "3", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == EXIT_OK and [float(r["z"]) for r in rows] == [2.0, 3.0, 4.0]
        assert float(rows[0]["J"]) == pytest.approx(0.47309643556333, abs=1e-13)

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "j.json"
        code, out, _ = run(capsys, "compute", "--n", "1", "--z", "2", "--format", "json", "--out", str(path))
        assert code == EXIT_OK and out == ""
        assert json.loads(path.read_text())["J"] == pytest.approx(0.623810716364871, abs=1e-15)

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "compute", "--n", "3", "--z", "2")
        assert code == EXIT_DOMAIN and "z >= n" in err

    def test_threads_same_answer(self, capsys):
        _, a, _ = run(capsys, "compute", "--n", "4", "--z-range", "4.5", "6", "4", "--format", "csv")
        _, b, _ = run(capsys, "compute", "--n", "4", "--z-range", "4.5", "6", "4", "--format", "csv", "--threads", "4")
        assert a == b


class TestVerify:
    def test_single_identity(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "eq15", "--grid", "3.05")
        assert code == EXIT_OK and "pass" in out

    def test_csv_round_trip(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "eq10", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == EXIT_OK
        assert rows[0] == ["identity", "argument", "lhs", "rhs", "abs_diff", "tol", "verdict", "note"]
        again = io.StringIO()
        csv.writer(again, lineterminator="\n").writerows(rows)
        assert again.getvalue() == out

    def test_identity_failure_exit(self, capsys):
        code, _, _ = run(capsys, "verify", "--identity", "eq11", "--grid", "3", "--tol", "1e-3")
        assert code in (0, 1)
        code, out, _ = run(capsys, "verify", "--identity", "eq4", "--grid", "1", "--tol", "1e-2", "--format", "json")
        data = json.loads(out)
        assert code == (1 if data[0]["verdict"] == "fail" else 0)

    def test_errata_file(self, capsys, tmp_path):
        path = tmp_path / "errata.json"
        code, _, _ = run(capsys, "verify", "--identity", "eq9", "--errata", str(path))
        assert code == EXIT_OK
        assert len(json.loads(path.read_text())) == 6

    def test_unknown_identity_is_usage(self, capsys):
        assert usage(capsys, "verify", "--identity", "eq99") == EXIT_USAGE

    def test_grid_needs_identity(self, capsys):
        assert usage(capsys, "verify", "--grid", "1,2") == EXIT_USAGE


class TestTable:
    def test_diagonal(self, capsys):
        code, out, _ = run(capsys, "table", "--n-list", "2..10", "--diagonal", "--tol", "1e-10")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == EXIT_OK
        assert list(rows[0]) == ["n", "z", "J", "err_estimate", "route", "status"]
        assert [int(r["n"]) for r in rows] == list(range(2, 11))
        assert all(r["status"] == "ok" for r in rows)
        js = [float(r["J"]) for r in rows]
        assert all(b > a for a, b in zip(js, js[1:]))

    def test_diagonal_cap_warns(self, capsys):
        code, out, err = run(capsys, "table", "--n-list", "29..31", "--diagonal", "--tol", "1e-8")
        assert code == EXIT_OK and "warning" in err and "31" in err
        assert len(out.strip().splitlines()) == 3

    def test_grid_rows_report_errors(self, capsys):
        code, out, _ = run(capsys, "table", "--n-list", "1,3", "--z-list", "2", "--format", "json")
        rows = json.loads(out)
        assert code == EXIT_OK
        assert rows[0]["status"] == "ok" and rows[1]["status"].startswith("error")
        assert rows[1]["J"] is None

    @pytest.mark.parametrize("argv", [
        ["table", "--n-list", "1", "--z-list", ""],
        ["table", "--n-list", "5..2", "--diagonal"],
        ["table", "--n-list", "1"],
        ["compute", "--n", "1"],
        ["compute", "--n", "1", "--z", "2", "--tol", "-1"],
        ["compute", "--n", "1", "--z-range", "1", "2", "0"],
        ["compute", "--n", "1", "--z", "2", "--threads", "-2"],
        ["bogus"],
        [],
    ])
    def test_usage_errors(self, capsys, argv):
        assert usage(capsys, *argv) == EXIT_USAGE


def test_helpers():
    assert parse_int_list("1,4..6") == [1, 4, 5, 6]
    assert fmt_float(None) == "" and fmt_float(math.nan) == "nan" and fmt_float(0.1) == "0.1"
    assert fmt_float(1 / 3) == "0.333333333333333"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypercubic_mahler", "compute", "--n", "1", "--z", "2"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "0.623810716364871" in proc.stdout
