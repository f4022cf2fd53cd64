"""Command-line interface: record schema, CSV output, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

PKG = [sys.executable, "-m", "polybohr"]


def run_cli(*args):
    return subprocess.run(PKG + list(args), capture_output=True, text=True)


def payload_of(proc):
    record = json.loads(proc.stdout)
    assert record["schema_version"] == 1
    return record["payload"]


class TestRadiusCommand:
    def test_classical(self):
        proc = run_cli("radius", "--family", "classical", "--n", "3")
        assert proc.returncode == 0
        payload = payload_of(proc)
        assert payload["radius_r"] == pytest.approx(1.0 / 9.0, abs=1e-15)

    def test_euler(self):
        proc = run_cli("radius", "--family", "euler", "--n", "1",
                       "--lambda", "0.25")
        assert proc.returncode == 0
        assert payload_of(proc)["radius_x"] == pytest.approx(0.3191, abs=1e-3)

    def test_convex_t_case_insensitive(self):
        proc = run_cli("radius", "--family", "convexT", "--t", "0.75")
        assert proc.returncode == 0
        assert payload_of(proc)["radius_r"] == 0.5

    def test_unknown_family_usage_error(self):
        proc = run_cli("radius", "--family", "nonsense")
        assert proc.returncode == 2

    def test_missing_parameter_usage_error(self):
        proc = run_cli("radius", "--family", "euler", "--n", "1")
        assert proc.returncode == 2
        assert "--lambda" in proc.stderr

    def test_out_of_range_parameter_usage_error(self):
        proc = run_cli("radius", "--family", "area", "--n", "1", "--t", "1.5")
        assert proc.returncode == 2

    def test_degenerate_solve_exits_one_with_diagnostic(self):
        proc = run_cli("radius", "--family", "convexmnt", "--m", "1",
                       "--n", "1", "--t", "1.0")
        assert proc.returncode == 1
        record = json.loads(proc.stdout)
        assert record["command"] == "error"
        assert "NoSignChangeError" in record["payload"]["error"]

    def test_seventeen_digit_serialization(self):
        proc = run_cli("radius", "--family", "rmn", "--m", "1", "--N", "1")
        # sqrt(5) - 2 printed with 17 significant digits round-trips exactly
        payload = payload_of(proc)
        assert "0.2360679774997" in proc.stdout
        assert payload["radius_r"] == pytest.approx(5 ** 0.5 - 2, abs=1e-13)


class TestTableCommand:
    def test_limits_table_csv(self):
        proc = run_cli("table", "--name", "thmC-limits", "--N-max", "2")
        assert proc.returncode == 0
        lines = proc.stdout.splitlines()
        assert lines[0] == "N,limit_x,residual"
        assert len(lines) == 3
        assert lines[1].startswith("1,0.333333333333")
        assert lines[2].startswith("2,0.5")
        assert proc.stdout.endswith("\n")
        assert "\r" not in proc.stdout

    def test_sweep_table_increasing(self):
        proc = run_cli("table", "--name", "thm2.2-sweepN", "--n", "2",
                       "--m", "1", "--N-max", "6")
        rows = [line.split(",") for line in proc.stdout.splitlines()[1:]]
        xs = [float(row[2]) for row in rows]
        assert xs == sorted(xs)

    def test_piecewise_table_branches(self):
        proc = run_cli("table", "--name", "thmF-piecewise", "--n", "1",
                       "--t-steps", "10")
        lines = proc.stdout.splitlines()
        by_t = {float(l.split(",")[0]): l.split(",") for l in lines[1:]}
        assert by_t[0.6][3] == "clamped"
        assert float(by_t[0.6][2]) == pytest.approx(1.0 / 3.0)
        assert by_t[0.5][3] == "cubic"

    def test_json_format(self):
        proc = run_cli("table", "--name", "thmC-limits", "--N-max", "3",
                       "--format", "json")
        payload = payload_of(proc)
        assert payload["columns"] == ["N", "limit_x", "residual"]
        assert len(payload["rows"]) == 3

    def test_unknown_table_usage_error(self):
        proc = run_cli("table", "--name", "bogus")
        assert proc.returncode == 2


class TestVerifyCommand:
    def test_classical_passes(self):
        proc = run_cli("verify", "--family", "classical", "--n", "2",
                       "--samples", "25", "--seed", "7")
        assert proc.returncode == 0
        payload = payload_of(proc)
        assert payload["passed"] is True
        suites = {s["suite"] for s in payload["suites"]}
        assert suites == {"holds-below", "sharpness-above"}

    def test_byte_identical_reports(self):
        args = ("verify", "--family", "classical", "--n", "2",
                "--samples", "25", "--seed", "7")
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.stdout == second.stdout
        assert first.stdout.encode() == second.stdout.encode()

    def test_sharpness_alias_reports_witness(self):
        proc = run_cli("sharpness", "--family", "rmnn", "--m", "2",
                       "--n", "1", "--N", "2")
        assert proc.returncode == 0
        payload = payload_of(proc)
        (suite,) = payload["suites"]
        assert suite["witness_a"] is not None

    def test_area_sharpness_fails_with_exit_one(self):
        proc = run_cli("verify", "--family", "area", "--n", "1", "--t", "0.4",
                       "--samples", "5", "--sharpness")
        assert proc.returncode == 1
        payload = payload_of(proc)
        assert payload["passed"] is False


class TestExpandCommand:
    def test_extremal_a_zero_two_vars(self):
        proc = run_cli("expand", "--family", "extremal", "--a", "0",
                       "--n", "2", "--K", "2")
        payload = payload_of(proc)
        assert payload["coefficients"] == [
            ["0 0", 0, 0], ["1 0", -1, 0], ["0 1", -1, 0]]

    def test_extremal_cubic_coefficient(self):
        proc = run_cli("expand", "--family", "extremal", "--a", "0.5",
                       "--n", "1", "--K", "3")
        payload = payload_of(proc)
        assert payload["coefficients"][-1] == ["3", -0.1875, 0.0]

    def test_sample_reproducible_byte_identically(self):
        args = ("expand", "--family", "blaschke-sample", "--seed", "1",
                "--n", "2", "--factors", "2", "--K", "5")
        assert run_cli(*args).stdout == run_cli(*args).stdout

    def test_csv_format(self):
        proc = run_cli("expand", "--family", "extremal", "--a", "0.5",
                       "--n", "1", "--K", "2", "--format", "csv")
        lines = proc.stdout.splitlines()
        assert lines[0] == "alpha,re,im"
        assert len(lines) == 4


class TestLimitsCommand:
    def test_n_sweep(self):
        proc = run_cli("limits", "--m", "1", "--n", "2",
                       "--N-list", "1,2,5,10")
        payload = payload_of(proc)
        assert payload["axis"] == "N"
        assert payload["strictly_increasing"] is True

    def test_m_sweep_reports_gap(self):
        proc = run_cli("limits", "--n", "1", "--N", "1",
                       "--m-list", "1,2,5,20,100")
        payload = payload_of(proc)
        assert payload["limit_x"] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert abs(payload["final_gap_x"]) < 1e-3

    def test_requires_exactly_one_axis(self):
        assert run_cli("limits").returncode == 2
        assert run_cli("limits", "--N-list", "1,2", "--m-list", "1,2").returncode == 2


def test_entry_point_help():
    proc = run_cli("--help")
    assert proc.returncode == 0
    for sub in ("radius", "table", "verify", "sharpness", "expand", "limits"):
        assert sub in proc.stdout
