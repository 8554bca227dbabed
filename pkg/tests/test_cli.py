"""CLI: output schemas, self-describing headers, byte-exact reproduction,
exit codes."""

import json
import subprocess
import sys

import pytest

import ewadyn.cli as cli


def run_cli(*argv, check=True):
    proc = subprocess.run([sys.executable, "-m", "ewadyn", *argv],
                          capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
    return proc


def parse_header(text):
    """Recover the echoed parameters from a CSV header."""
    params = {}
    for line in text.splitlines():
        if not line.startswith("# ") or line.startswith("# columns:") or " = " not in line:
            continue
        key, value = line[2:].split(" = ", 1)
        params[key] = value
    return params


def rebuild_argv(command, params):
    argv = [command]
    for key, value in params.items():
        flag = "--" + key.replace("_", "-")
        if value == "true":
            argv.append(flag)
        elif value == "false":
            continue
        else:
            argv.extend([flag, value])
    return argv


def data_rows(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


CSV_GOLDEN_CASES = [
    ("orbit", ["--a", "2.0", "--b", "0.4", "--sigma", "0.25", "--x0", "0.3",
               "--transient", "10", "--samples", "20"], ["n", "x"]),
    ("boundary", ["--sigma", "0.5", "--a-min", "6.0", "--a-max", "30.0",
                  "--a-steps", "7"], ["a", "xbar1", "xbar2", "b1", "b2"]),
    ("bifurcation", ["--b", "0.4", "--sigma", "0.5", "--a-min", "2.0", "--a-max", "20.0",
                     "--a-steps", "6", "--samples-per-a", "8", "--transient", "500"],
     ["a", "x"]),
    ("period-diagram", ["--sigma", "0.25", "--a-steps", "5", "--b-steps", "5",
                        "--transient", "300"], ["a", "b", "period"]),
    ("regime-map", ["--sigma-steps", "5", "--b-steps", "9"], ["sigma", "b", "label"]),
    ("cobweb", ["--a", "35.0", "--b", "0.4", "--sigma", "0.5", "--x0", "0.2",
                "--steps", "12"], ["segment_index", "x", "y"]),
    ("potential", ["--a", "35.0", "--b", "0.4", "--points", "50"], ["x", "phi"]),
]


@pytest.mark.parametrize("command,args,columns", CSV_GOLDEN_CASES,
                         ids=[c[0] for c in CSV_GOLDEN_CASES])
def test_csv_commands_roundtrip(command, args, columns, tmp_path):
    out = tmp_path / "out.csv"
    run_cli(command, *args, "--out", str(out))
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == f"# ewadyn {command}"
    assert f"# columns: {','.join(columns)}" in lines
    rows = data_rows(text)
    assert rows, "no data rows"
    for row in rows:
        fields = row.split(",")
        assert len(fields) == len(columns)
        for name, field in zip(columns, fields):
            if name == "label":
                assert field in {"period2", "chaos", "boundary", "invalid"}
            else:
                float(field)  # parses as a number
    # byte-exact reproduction from the echoed header
    again = tmp_path / "again.csv"
    run_cli(*rebuild_argv(command, parse_header(text)), "--out", str(again))
    assert again.read_bytes() == out.read_bytes()


JSON_GOLDEN_CASES = [
    ("fixpoint", ["--a", "7.0", "--b", "0.4", "--sigma", "0.0"]),
    ("threshold", ["--b", "0.4", "--sigma", "0.0"]),
    ("astar", ["--sigma", "0.5"]),
    ("regime", ["--b", "0.5", "--sigma", "0.0"]),
    ("period", ["--a", "35.0", "--b", "0.4", "--sigma", "0.5"]),
    ("certify-chaos", ["--a", "200.0", "--b", "0.2", "--sigma", "0.5"]),
    ("verify-trap", ["--a", "200.0", "--b", "0.45", "--sigma", "0.5"]),
    ("lyapunov", ["--a", "1.0", "--b", "0.5", "--sigma", "0.0", "--transient", "100",
                  "--steps", "500"]),
]


@pytest.mark.parametrize("command,args", JSON_GOLDEN_CASES,
                         ids=[c[0] for c in JSON_GOLDEN_CASES])
def test_json_commands_roundtrip(command, args, tmp_path):
    out = tmp_path / "out.json"
    run_cli(command, *args, "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["command"] == command
    assert isinstance(doc["params"], dict) and isinstance(doc["result"], dict)
    # byte-exact reproduction from the echoed params
    params = {k: ("true" if v is True else "false" if v is False else repr(v))
              for k, v in doc["params"].items()}
    again = tmp_path / "again.json"
    run_cli(*rebuild_argv(command, params), "--out", str(again))
    assert again.read_bytes() == out.read_bytes()


class TestAnchoredOutputs:
    def test_period_result(self):
        proc = run_cli("period", "--a", "35.0", "--b", "0.4", "--sigma", "0.5")
        doc = json.loads(proc.stdout)
        assert doc["result"]["period"] == 2
        assert doc["result"]["label"] == "attracting"

    def test_chaotic_period_is_null(self):
        proc = run_cli("period", "--a", "35.0", "--b", "0.4", "--sigma", "0.0")
        doc = json.loads(proc.stdout)
        assert doc["result"]["period"] is None

    def test_fixpoint_result(self):
        proc = run_cli("fixpoint", "--a", "7.0", "--b", "0.4", "--sigma", "0.0")
        doc = json.loads(proc.stdout)
        assert abs(doc["result"]["xbar"] - 0.4) < 1e-12

    def test_regime_result(self):
        proc = run_cli("regime", "--b", "0.5", "--sigma", "0.0")
        assert json.loads(proc.stdout)["result"]["label"] == "boundary"

    def test_astar_full_memory_is_null(self):
        proc = run_cli("astar", "--sigma", "0.0")
        assert json.loads(proc.stdout)["result"]["a_star"] is None

    def test_certify_chaos_result(self):
        proc = run_cli("certify-chaos", "--a", "200.0", "--b", "0.8", "--sigma", "0.5")
        res = json.loads(proc.stdout)["result"]
        assert res["hypothesis_met"] and res["period3_found"]
        assert res["witness"]["mirrored"] is True
        assert abs(res["entropy_lower_bound"] - 0.4812118250596034) < 1e-12

    def test_stdout_equals_file_output(self, tmp_path):
        out = tmp_path / "o.csv"
        argv = ["potential", "--a", "2.0", "--b", "0.3", "--points", "11"]
        run_cli(*argv, "--out", str(out))
        proc = run_cli(*argv)
        assert proc.stdout == out.read_text()


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self):
        proc = run_cli("fixpoint", "--a", "7", "--b", "0.4", "--sigma", "0",
                       "--bogus", "1", check=False)
        assert proc.returncode == 2

    def test_out_of_range_parameter_is_usage_error(self):
        proc = run_cli("fixpoint", "--a", "-3", "--b", "0.4", "--sigma", "0", check=False)
        assert proc.returncode == 2
        proc = run_cli("threshold", "--b", "0.4", "--sigma", "1.0", check=False)
        assert proc.returncode == 2
        proc = run_cli("fixpoint", "--a", "1e999", "--b", "0.4", "--sigma", "0", check=False)
        assert proc.returncode == 2

    def test_inconsistent_range_is_usage_error(self):
        proc = run_cli("boundary", "--sigma", "0.5", "--a-min", "30", "--a-max", "10",
                       check=False)
        assert proc.returncode == 2

    def test_trap_hypothesis_violation_is_usage_error(self):
        proc = run_cli("verify-trap", "--a", "50", "--b", "0.2", "--sigma", "0.5",
                       check=False)
        assert proc.returncode == 2
        assert "min(b,1-b)" in proc.stderr

    def test_numerical_failure_maps_to_exit_one(self, monkeypatch, capsys):
        def boom(p):
            raise ValueError("synthetic numerical failure")
        monkeypatch.setattr(cli, "solve_fixed_point", boom)
        code = cli.main(["fixpoint", "--a", "7", "--b", "0.4", "--sigma", "0"])
        assert code == 1
        assert "numerical failure" in capsys.readouterr().err

    def test_verify_subset_exits_zero(self):
        proc = run_cli("verify", "--criteria", "2,3")
        assert "PASS" in proc.stdout
        assert "2/2 criteria passed" in proc.stdout

    def test_verify_rejects_unknown_criterion(self):
        proc = run_cli("verify", "--criteria", "99", check=False)
        assert proc.returncode == 2
