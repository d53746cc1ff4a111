import json
import subprocess
import sys

import pytest

from surfmu import __version__, shifts
from surfmu.cli import CSV_HEADER, fmt_float, run, to_json
from surfmu.shifts import Orientation


def _run(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_float_format():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(float("nan")) == "null"
    doc = json.loads(to_json({"a": 1.0 / 3.0, "b": [1, None, True], "c": "x"}))
    assert doc == {"a": 1.0 / 3.0, "b": [1, None, True], "c": "x"}
    assert "0.33333333333333331" in to_json({"a": 1.0 / 3.0})


def test_shift_plasma_json(capsys):
    code, out, err = _run(capsys, ["shift", "--model", "plasma", "--omega-p-d", "50",
                                   "--orientation", "perp"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert set(doc) >= {"value", "est_err", "method", "breakdown", "inputs", "version"}
    assert doc["version"] == __version__
    assert doc["value"] == shifts.plasma_total(50.0, Orientation.PERPENDICULAR, 1.0).s_hat
    assert doc["breakdown"]["te"] + doc["breakdown"]["tm"] == pytest.approx(doc["value"])


def test_shift_methods(capsys):
    code, out, _ = _run(capsys, ["shift", "--model", "nondisp", "--n", "2", "--method", "wedge"])
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(-1.671534129755, rel=1e-9)
    code, out, _ = _run(capsys, ["shift", "--model", "pm", "--orientation", "para"])
    assert json.loads(out)["value"] == -1.0
    code, out, _ = _run(capsys, ["shift", "--model", "dispersive", "--omega-p-d", "2",
                                 "--omega-t-d", "1", "--method", "large", "--format", "csv"])
    lines = out.splitlines()
    assert lines[0] == CSV_HEADER and lines[1].endswith(",asymptotic")


def test_lab_units(capsys):
    code, out, _ = _run(capsys, ["shift", "--model", "plasma", "--omega-p-ev", "197.3269804",
                                 "--z-nm", "1"])
    assert code == 0
    assert json.loads(out)["inputs"]["omega_p_d"] == pytest.approx(1.0, rel=1e-15)


def test_usage_errors(capsys):
    assert _run(capsys, [])[0] == 2
    assert _run(capsys, ["shift"])[0] == 2
    assert _run(capsys, ["shift", "--model", "plasma"])[0] == 2
    code, out, err = _run(capsys, ["shift", "--model", "plasma", "--omega-p-d", "1",
                                   "--z-nm", "3"])
    assert code == 2 and out == "" and "not both" in err
    assert _run(capsys, ["shift", "--model", "pm", "--method", "tm"])[0] == 2
    assert _run(capsys, ["shift", "--model", "nondisp", "--n", "0.5"])[0] == 2
    assert _run(capsys, ["shift", "--model", "pm", "--rel-tol", "-1"])[0] == 2
    assert _run(capsys, ["--version"])[0] == 0


def test_numerical_failure_exit(capsys):
    code, out, err = _run(capsys, ["shift", "--model", "dispersive", "--omega-p-d", "2",
                                   "--omega-t-d", "1", "--rel-tol", "1e-15", "--abs-tol", "1e-300",
                                   "--max-subdivisions", "10"])
    assert code == 3 and out == "" and "numerical" in err


def test_sweep_csv_deterministic(capsys, tmp_path):
    argv = ["sweep", "--family", "dispersive", "--omega-t-d", "0.05", "--var", "sqrt-chi0",
            "--range", "0.5:3", "--points", "4"]
    code, out1, _ = _run(capsys, argv)
    assert code == 0
    lines = out1.splitlines()
    assert lines[0] == "x,s_hat,est_err,method" and len(lines) == 5
    code, out2, _ = _run(capsys, argv + ["--workers", "2"])
    assert out1 == out2
    dest = tmp_path / "s.csv"
    assert run(argv + ["--output", str(dest)]) == 0
    assert dest.read_text() == out1


def test_config_file_merge(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# plasma run\nmodel = plasma\nomega-p-d = 2.0\norientation = para\n")
    code, out, _ = _run(capsys, ["shift", "--config", str(cfg)])
    doc = json.loads(out)
    assert code == 0 and doc["inputs"]["orientation"] == "para"
    assert doc["inputs"]["omega_p_d"] == 2.0
    code, out, _ = _run(capsys, ["shift", "--config", str(cfg), "--omega-p-d", "3"])
    assert json.loads(out)["inputs"]["omega_p_d"] == 3.0
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert _run(capsys, ["shift", "--config", str(bad)])[0] == 2


def test_convert(capsys):
    code, out, _ = _run(capsys, ["convert", "--z-nm", "1", "--omega-t-ev", "1.973269804",
                                 "--s-hat", "2"])
    doc = json.loads(out)
    assert code == 0
    assert doc["omega_t_d"] == pytest.approx(0.01, rel=1e-12)
    assert doc["relative_shift"] == pytest.approx(2 * doc["relative_shift_per_s_hat"])


def test_peak_no_peak_is_data(capsys):
    code, out, _ = _run(capsys, ["peak", "--omega-t-d", "0.2"])
    assert code == 0 and json.loads(out)["found"] is False


def test_validate_reports_failed_invariant(capsys):
    # The plasma-to-mirror audit (b) is outside its 0.05 bound, so validate fails honestly.
    code, out, err = _run(capsys, ["validate"])
    doc = json.loads(out)
    failed = [c["check"] for c in doc["checks"] if not c["passed"]]
    assert failed == ["limit_audit_b"]
    assert code == 1
    assert "FAILED limit_audit_b" in err and "tolerance" in err


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "surfmu", "shift", "--model", "pm"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["value"] == 1.0
