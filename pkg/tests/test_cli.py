import json
import subprocess
import sys

import pytest

from qdeform import cli
from qdeform.errors import NumericError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--kind", "V1", "--nu", "2.5")
    assert code == 0
    d = json.loads(out)
    assert [lv["E"] for lv in d["levels"]] == [-4.0, -1.0]
    assert d["spec"]["kind"] == "V1" and d["method"] == "closed_form"


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--kind", "V1", "--lambda", "2.5", "--format", "csv")
    assert code == 0 and out.splitlines() == ["n,energy", "0,-4.0", "1,-1.0"]


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", "--kind", "V1", "--nu", "2.5", "--grid-points", "4000")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,analytic,oracle,abs_diff,pass"
    assert all(line.endswith("PASS") for line in lines[1:]) and len(lines) == 3
    code, out, _ = run(capsys, "verify", "--kind", "V1", "--nu", "2.5", "--grid-points", "200",
                       "--tol", "1e-12", "--format", "json")
    d = json.loads(out)
    assert code == 1 and d["pass"] is False


def test_verify_v8(capsys):
    code, out, _ = run(capsys, "verify", "--kind", "V8", "--f", "12", "--h1", "3",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["pass"] and len(d["levels"]) == 1


def test_green_scan_csv_with_negative_window(capsys):
    code, out, _ = run(capsys, "green-scan", "--kind", "V1", "--nu", "2.5", "--window", "-5:-0.5",
                       "--resolution", "20", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "E,re_invG,im_invG" and len(lines) == 21


def test_green_scan_json_poles(capsys):
    code, out, _ = run(capsys, "green-scan", "--kind", "V1", "--nu", "2.5", "--window=-5:-0.5")
    d = json.loads(out)
    assert code == 0
    assert d["poles"] == pytest.approx([-4.0, -1.0], abs=1e-8)


def test_wavefunction_csv(capsys):
    code, out, _ = run(capsys, "wavefunction", "--kind", "V4", "--beta", "1", "--lambda", "3.5",
                       "--level", "1", "--format", "csv", "--step", "0.5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,psi" and len(lines) > 10


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"kind": "V2", "q": 2.0, "eta": 2.5, "nu": 9.5, "format": "csv"}))
    code, out, _ = run(capsys, "spectrum", "--config", str(cfg))
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = run(capsys, "spectrum", "--config", str(cfg), "--nu", "7.5", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["spec"]["nu"] == 7.5 and d["spec"]["q"] == 2.0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "levels.csv"
    code, out, _ = run(capsys, "spectrum", "--kind", "V1", "--nu", "2.5", "--format", "csv",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("n,energy")


@pytest.mark.parametrize("argv", [
    ["spectrum"],
    ["bogus", "--kind", "V1"],
    ["spectrum", "--kind", "V1", "--nu", "abc"],
    ["green-scan", "--kind", "V1", "--nu", "2.5", "--window", "3:1"],
    ["verify", "--kind", "V1", "--nu", "2.5", "--tol", "-1"],
    ["spectrum", "--config", "/nonexistent/cfg.json"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    d = json.loads(err)
    assert d["exit_code"] == 2 and d["error"] == "usage"


@pytest.mark.parametrize("argv", [
    ["spectrum", "--kind", "V9"],
    ["spectrum", "--kind", "V1"],
    ["spectrum", "--kind", "V7p", "--A", "5", "--B", "-3"],
    ["wavefunction", "--kind", "V1", "--nu", "2.5", "--level", "5"],
    ["spectrum", "--kind", "V1", "--nu", "2.5", "--q", "-1"],
])
def test_validation_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and json.loads(err)["error"] == "validation"


def test_numeric_failure_exit_code(capsys, monkeypatch):
    def boom(cfg):
        raise NumericError("did not converge")

    monkeypatch.setitem(cli._COMMANDS, "spectrum", boom)
    code, _, err = run(capsys, "spectrum", "--kind", "V1", "--nu", "2.5")
    assert code == 3 and json.loads(err) == {"error": "numeric", "message": "did not converge",
                                             "exit_code": 3}


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qdeform.cli", "spectrum", "--kind", "V1", "--nu",
                        "2.5"], capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["n_max"] == 1
