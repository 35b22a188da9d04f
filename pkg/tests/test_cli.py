import json
import subprocess
import sys

import pytest

from cyclocwe.cli import main
from cyclocwe.field import build_field


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cwe_text_form(capsys):
    code, out, _ = run(capsys, "cwe", "--code", "c2", "--p", "3", "--m", "3", "--l", "1",
                       "--method", "both", "--format", "text")
    assert code == 0
    assert "[26, 6, 12]" in out
    assert "156*w0^14*w1^6*w2^6" in out
    assert "closed == brute: True" in out


def test_verify_json_records_field_and_repair(capsys):
    code, out, _ = run(capsys, "verify", "--code", "C2", "--p", "3", "--m", "4", "--l", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["match"] is True
    assert rep["field"] == build_field(3, 4).descriptor()
    assert rep["repairs"][0]["printed_matches_oracle"] is False
    assert "timings" not in rep


def test_output_is_deterministic(capsys):
    args = ("verify", "--code", "C1", "--p", "5", "--m", "3", "--l", "1")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args, "--workers", "2")
    assert first == second


def test_poly_override_recorded(capsys):
    code, out, _ = run(capsys, "field-info", "--p", "3", "--m", "3", "--poly", "1,2,0,1")
    assert code == 0
    assert json.loads(out)["field"]["prim_poly"] == [1, 2, 0, 1]


def test_field_info_dimensions(capsys):
    code, out, _ = run(capsys, "field-info", "--p", "3", "--m", "6", "--l", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["dim_C1"] == rep["dim_C1_expected"] == 6
    assert rep["dim_C2"] == rep["dim_C2_expected"] == 12


def test_sum_dist(capsys):
    code, out, _ = run(capsys, "sum-dist", "--sum", "S", "--p", "3", "--m", "4", "--l", "1",
                       "--format", "text")
    assert code == 0
    assert "+9: 60" in out and "-27: 20" in out
    code, out, _ = run(capsys, "sum-dist", "--sum", "T", "--p", "3", "--m", "3", "--l", "1")
    assert code == 0 and json.loads(out)["match"] is True


@pytest.mark.parametrize("argv", [
    ("field-info", "--p", "4", "--m", "2"),
    ("cwe", "--code", "C1", "--p", "3", "--m", "3", "--l", "3"),
    ("field-info", "--p", "3", "--m", "2", "--poly", "1,0,1"),
])
def test_parameter_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "cwe", "--code", "C2", "--p", "3", "--m", "4", "--l", "1",
                       "--method", "brute", "--budget", "10")
    assert code == 3 and "BudgetExceeded" in err
    code, _, _ = run(capsys, "verify", "--code", "C2", "--p", "3", "--m", "4", "--l", "1",
                     "--budget", "10")
    assert code == 3


def test_out_file(tmp_path, capsys):
    target = tmp_path / "cwe.json"
    code, out, _ = run(capsys, "cwe", "--code", "C1", "--p", "3", "--m", "2", "--l", "1",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["closed"]["entries"][1]["freq"] == 2


def test_sweep_command(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "3", "--m-max", "3")
    assert code == 0
    assert out.count("match") == 6 and "MISMATCH" not in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclocwe", "cwe", "--code", "C1", "--p", "3", "--m", "2",
         "--l", "1", "--format", "text"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "2*w1^4*w2^4" in proc.stdout


def test_usage_error_from_argparse():
    proc = subprocess.run([sys.executable, "-m", "cyclocwe", "cwe"], capture_output=True, text=True)
    assert proc.returncode == 2
