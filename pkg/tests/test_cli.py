import csv
import io
import json
import subprocess
import sys

import pytest

from teichpoisson.cli import run


def run_capture(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_kernel_table_example(capsys):
    code, out, _ = run_capture(["kernel-table", "--x0", "0,1", "--x", "0,2", "--grid", "16"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 16
    first = rows[0]
    assert (float(first["p"]), float(first["q"])) == (1.0, 0.0)
    assert first["kernel"] == "2.0"
    assert float(rows[8]["kernel"]) == pytest.approx(0.5)


def test_verify_single_check(tmp_path, capsys):
    out_path = tmp_path / "r.json"
    code, out, _ = run_capture(["verify", "poisson", "--tol", "1e-6", "--output", str(out_path)], capsys)
    assert code == 0
    assert out.startswith("PASS poisson")
    reports = json.loads(out_path.read_text())
    assert reports[0]["check_id"] == "poisson" and reports[0]["passed"] is True
    assert reports[0]["tolerance"] == 1e-6


def test_verify_failure_exit_code(capsys):
    code, _, err = run_capture(["verify", "rays", "--tol", "1e-30"], capsys)
    assert code == 1
    assert "FAIL rays" in err


@pytest.mark.parametrize("argv", [
    ["verify", "bogus"],
    ["kernel-table", "--x", "0,-1"],
    ["kernel-table", "--grid", "zero"],
    ["ray-trace", "--lamination", "0,0"],
    ["limit-trace", "--function", "nope"],
    ["verify", "all", "--tol", "1e-3"],
    [],
])
def test_argument_errors(argv, capsys):
    code, _, _ = run_capture(argv, capsys)
    assert code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"x0": "0,1", "x": "0,2", "grid": 4}))
    code, out, _ = run_capture(["kernel-table", "--config", str(cfg)], capsys)
    assert code == 0 and len(out.splitlines()) == 5
    # flags win over the file
    code, out, _ = run_capture(["kernel-table", "--config", str(cfg), "--grid", "2"], capsys)
    assert code == 0 and len(out.splitlines()) == 3
    cfg.write_text(json.dumps({"grid": 4, "colour": "red"}))
    code, _, err = run_capture(["kernel-table", "--config", str(cfg)], capsys)
    assert code == 2 and "colour" in err


def test_verify_csv_and_table(tmp_path, capsys):
    table = tmp_path / "t.csv"
    code, out, _ = run_capture(["verify", "harmonic-measure", "--format", "csv", "--table", str(table)], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and set(rows[0]) == {"check_id", "label", "value", "tolerance", "passed"}
    assert table.read_text().startswith("check_id,input,computed,expected")


@pytest.mark.parametrize("argv", [
    ["measure-table", "--x", "1,2", "--grid", "8"],
    ["ray-trace", "--x", "0,1", "--lamination", "1,1", "--steps", "4", "--format", "json"],
    ["limit-trace", "--function", "cayley_re", "--lamination", "1,1"],
])
def test_table_commands(argv, capsys):
    code, out, _ = run_capture(argv, capsys)
    assert code == 0 and out


def test_limit_trace_reaches_boundary_value(capsys):
    code, out, _ = run_capture(["limit-trace", "--lamination", "0,1"], capsys)
    rows = {r["t"]: r["value"] for r in csv.DictReader(io.StringIO(out))}
    assert float(rows["limit"]) == pytest.approx(-1.0, abs=1e-10)
    assert float(rows["boundary_value"]) == -1.0


def test_help_lists_every_command():
    res = subprocess.run([sys.executable, "-m", "teichpoisson", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    for cmd in ("verify", "kernel-table", "measure-table", "ray-trace", "limit-trace"):
        assert cmd in res.stdout


def test_verify_all_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"all{k}.json"
        res = subprocess.run([sys.executable, "-m", "teichpoisson", "verify", "all", "--seed", "42",
                              "--output", str(path)], capture_output=True, text=True)
        assert res.returncode == 0, res.stdout + res.stderr
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert len(json.loads(outs[0])) == 10
