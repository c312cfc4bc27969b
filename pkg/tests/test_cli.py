import json
import subprocess
import sys

import numpy as np
import pytest

from edgegeom import webgen as wg
from edgegeom.cli import main


def run_json(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_family_json(capsys):
    code, data = run_json(capsys, "family", "--n", "10")
    assert code == 0
    assert data["provenance"].startswith("edgegeom ")
    assert [t["sides"] for t in data["tiles"]] == [5, 10, 5, 10]


def test_predict(capsys):
    code, data = run_json(capsys, "predict", "--n", "23")
    assert code == 0
    assert data["predicted_ds_indices"] == [19, 11, 3]


def test_poly_table_row(capsys):
    code, data = run_json(capsys, "poly", "--n", "22", "--tile", "DS5", "--relative-to", "M")
    assert code == 0
    assert data["coeffs"] == ["1/8", "-11/4", "1", "3/4", "-1/8"]


def test_period_with_tile(capsys):
    code, data = run_json(capsys, "period", "--n", "7", "--x", "-0.9631492376150573",
                          "--y", "-0.7", "--tile")
    assert code == 0
    assert data["period"] == 14
    assert data["tile"]["sides"] == 14


def test_usage_errors(capsys):
    assert main(["family", "--n", "2"]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["web", "--n", "7", "--workers", "0"]) == 2
    capsys.readouterr()


def test_domain_error_exit_code(capsys):
    assert main(["poly", "--n", "7", "--tile", "S9"]) == 1
    assert "error" in capsys.readouterr().err


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nN = 9\ndigits = 40\ndepth = 7\n")
    assert main(["family", "--config", str(cfg), "--dump-config"]) == 0
    dumped = json.loads(capsys.readouterr().out)
    assert dumped["N"] == 9 and dumped["precision_digits"] == 40 and dumped["depth"] == 7
    assert main(["family", "--config", str(cfg), "--n", "11", "--dump-config"]) == 0
    assert json.loads(capsys.readouterr().out)["N"] == 11


def test_env_default_digits(monkeypatch, capsys):
    monkeypatch.setenv("EDGEGEOM_DIGITS", "50")
    assert main(["family", "--n", "7", "--dump-config"]) == 0
    assert json.loads(capsys.readouterr().out)["precision_digits"] == 50


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["family", "--config", str(cfg)]) == 2
    capsys.readouterr()


def _web(tmp_path, name, workers):
    out = str(tmp_path / name)
    code = main(["web", "--n", "14", "--seeds=-2,-1", "--density", "0.01", "--depth", "200",
                 "--closure", "both", "--workers", str(workers), "--out", out])
    assert code == 0
    return out


def test_web_output_is_deterministic(tmp_path, capsys):
    a = _web(tmp_path, "a.ngwb", 1)
    b = _web(tmp_path, "b.ngwb", 1)
    with open(a, "rb") as fa, open(b, "rb") as fb:
        assert fa.read() == fb.read()
    c = _web(tmp_path, "c.ngwb", 2)
    assert np.array_equal(wg.load(a).points, wg.load(c).points)
    assert "config=" in wg.load(a).seed_spec["provenance"]
    capsys.readouterr()


def test_web_raster(tmp_path, capsys):
    out = str(tmp_path / "w.png")
    assert main(["web", "--n", "7", "--depth", "100", "--density", "0.01", "--out", out,
                 "--size", "80x60"]) == 0
    img = wg.load(out)
    assert img.shape == (60, 80) and img.max() == 255
    capsys.readouterr()


def test_verify_subset(capsys, tmp_path):
    report = tmp_path / "r.json"
    assert main(["verify", "--ids", "A6,A7", "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert [r["id"] for r in data["results"]] == ["A6", "A7"]
    assert data["passed"] == 2
    capsys.readouterr()


def test_verify_failure_exit_code(capsys):
    assert main(["verify", "--ids", "A2"]) == 1
    capsys.readouterr()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "edgegeom", "--version"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "edgegeom" in r.stdout
