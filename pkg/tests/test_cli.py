import json
import subprocess
import sys

import pytest

from quasiord.cli import main
from quasiord.report import InputSpec, render_text, run_report

from cases import POLY_PROJ, POLY_THREE


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def run_json(capsys, *argv):
    rc, out = run(capsys, *argv, "--json", "--no-timings")
    return rc, json.loads(out)


def test_kappa_json(capsys):
    rc, rep = run_json(capsys, "kappa", "--poly", POLY_THREE)
    assert rc == 0 and rep["error"] is None
    assert rep["kappa"] == {"vertices": [["1/2", "1/2", "1/2"], ["13/6", "5/2", "7/6"]], "terminal": "infinity"}
    assert rep["data"]["n_i"] == [2, 3]
    assert rep["data"]["lambda"] == [["1/2", "1/2", "1/2"], ["5/3", "2", "2/3"]]
    assert rep["data"]["approximate_roots"] == ["z", "-x1*x2*x3 + z^2"]
    assert "timings" not in rep


def test_json_is_byte_stable(capsys):
    argv = ("certify", "--poly", POLY_THREE, "--json", "--no-timings")
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b


def test_certify_and_permuted_projection(capsys):
    rc, rep = run_json(capsys, "certify", "--poly", "z^2 - x1*x2")
    assert rep["certificate"]["delta"] == "(1,1)" and rep["certificate"]["agreement"]
    rc, rep = run_json(capsys, "kappa", "--poly", POLY_PROJ)
    assert rc == 0 and rep["kappa"]["terminal"] == "minus_one"
    assert rep["diagnostics"][0]["kind"] == "several_vertices"
    rc, rep = run_json(capsys, "kappa", "--poly", POLY_PROJ, "--vars", "z,x2", "--main", "x1")
    assert rep["kappa"]["vertices"] == [["1", "1/2"]]
    assert rep["changes"]["base_shifts"] == ["x2 -> x2 + (-z)"]


def test_roots_command(capsys):
    rc, rep = run_json(capsys, "roots", "--poly", "z^2 - x1*x2", "--eta", "1")
    assert rc == 0
    roots = rep["roots"]
    assert roots["verified"] and roots["eta"] == [1]
    assert roots["bound"] == "6" and len(roots["branches"]) == 2
    rc, rep = run_json(capsys, "roots", "--poly", "z^2 - x1*x2", "--root-bound", "1/2")
    assert rc == 2 and rep["error"]["type"] == "BoundTooSmall"


def test_deformation_command(capsys):
    rc, rep = run_json(capsys, "deformation", "--poly", POLY_THREE)
    assert rep["deformation"]["equations"][0] == "F_0 = x1*x2*x3 - u0^2 + u1*T"
    assert rep["deformation"]["weights_ok"]
    rc, rep = run_json(capsys, "deformation", "--poly", POLY_PROJ)
    assert rc == 2 and "quasi-ordinary" in rep["error"]["message"]


def test_errors_are_reported(capsys):
    rc, rep = run_json(capsys, "kappa", "--poly", "z^2 - y", "--vars", "x")
    assert rc == 2 and rep["error"]["type"] == "UnknownVariable"
    rc, rep = run_json(capsys, "kappa", "--poly", "z^2 +")
    assert rc == 2 and rep["error"]["type"] == "ParseError" and rep["error"]["column"] == 6
    rc, rep = run_json(capsys, "kappa", "--poly", "x*z^2 + z", "--vars", "x")
    assert rc == 2 and rep["error"]["type"] == "NotWeierstrass"
    assert rep["kappa"] is None


def test_file_input_and_text(tmp_path, capsys):
    path = tmp_path / "f.txt"
    path.write_text(POLY_THREE + "\n")
    rc, out = run(capsys, "kappa", "--file", str(path))
    assert rc == 0 and "13/6" in out and "inf)" in out


def test_render_text_summary():
    rep = run_report(InputSpec(["x1", "x2"], "z", "z^2 - x1*x2", "certify", timings=False))
    text = render_text(rep)
    assert "inf)" in text and "delta=(1,1)" in text


def test_corpus_command(capsys):
    rc, out = run(capsys, "corpus", "--count", "10", "--no-timings")
    assert rc == 0
    assert out.strip().splitlines()[-1].endswith("agreement 10/10")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "quasiord.cli", "kappa", "--poly", "z^2 - x^3", "--json",
                          "--no-timings"], capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["kappa"]["vertices"] == [["3/2"]]
