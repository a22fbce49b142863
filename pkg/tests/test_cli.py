import json
import random
import subprocess
import sys

import pytest

from hurwitz_kz import kz, serialize
from hurwitz_kz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nmbp_text(capsys):
    code, out, _ = run(capsys, "nmbp", "--tuple", "0,0")
    assert code == 0 and out.strip() == "z²/2 − 1/6"


def test_nmbp_negative_tuple_json(capsys):
    code, out, _ = run(capsys, "nmbp", "--tuple", "-1,-2", "--json")
    d = json.loads(out)
    assert code == 0 and d["tuple"] == [-1, -2] and d["value_at_1"] == "-1/240"


def test_mzv_neg(capsys):
    assert run(capsys, "mzv-neg", "--tuple", "0,0,0", "--at", "1")[1].strip() == "-1/4"
    assert run(capsys, "mzv-neg", "--tuple", "0,0", "--at", "0")[1].strip() == "-1/6"


@pytest.mark.parametrize("argv", [
    ["nmbp", "--tuple", "1,2"],
    ["nmbp", "--tuple", "a,b"],
    ["mzv-neg", "--tuple", "0", "--at", "x"],
    ["hurwitz-eval", "--word", "2,1", "--z", "1"],
    ["hurwitz-eval", "--word", "2", "--z", "-1"],
    ["digamma", "--z", "0"],
    ["stuffle", "--word", "1"],
    ["regularize", "--word", "0,1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_algebra_commands(capsys):
    assert run(capsys, "stuffle", "--word", "1", "--word", "1")[1].strip() == "(2) + 2·(1,1)"
    assert run(capsys, "coproduct", "--word", "2")[1].strip() == "()⊗(2) + (1)⊗(1) + (2)⊗()"
    lines = run(capsys, "regularize", "--word", "2,1")[1].splitlines()
    assert lines == ["T^1: (2)", "T^0: −(3) − (1,2)"]


def test_hurwitz_eval(capsys):
    code, out, _ = run(capsys, "hurwitz-eval", "--word", "1,2", "--z", "1", "--tol", "1e-8", "--json")
    d = json.loads(out)
    assert code == 0 and abs(d["value"] - 1.2020569032) < 1e-8 and d["terms_used"] > 0
    code, out, _ = run(capsys, "hurwitz-eval", "--word", "1", "--z", "1", "--regularize")
    assert abs(float(out) - 0.5772156649015329) < 1e-13


def test_verify_pass_line_and_report(capsys, tmp_path):
    path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "--suite", "b0", "--max-depth", "3", "--max-index", "4", "--out", str(path))
    assert code == 0 and out.strip().splitlines()[-1].startswith("PASS (all ")
    rep = json.loads(path.read_text())
    assert rep["suite"] == "b0" and all(i["pass"] for i in rep["instances"])


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "props")
    assert code == 1 and "FAIL (4 of" in out


def test_vacuous_report(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify", "--suite", "closed-form", "--max-depth", "0", "--out", str(path))
    assert code == 0 and out.strip() == "vacuous"
    d = json.loads(path.read_text())
    assert d["instances"] == [] and d["summary"] == "vacuous"


def test_unwritable_report_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--suite", "b0", "--max-depth", "2", "--max-index", "1",
                     "--out", str(tmp_path / "missing" / "r.json"))
    assert code == 2


def test_conjecture_is_an_experiment(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "conjecture")
    lines = out.strip().splitlines()
    assert code == 0 and lines[-1].startswith("EXPERIMENT (")
    assert all(l.startswith("does not hold:") for l in lines[:-1])


def test_flatness_and_independence(capsys):
    assert run(capsys, "flatness", "--kind", "hb", "--max-depth", "2", "--max-index", "2")[0] == 0
    code, out, _ = run(capsys, "flatness", "--kind", "h", "--max-weight", "3", "--z", "5/2")
    assert code == 0 and out.startswith("PASS")
    assert run(capsys, "independence-check")[0] == 0


def test_psi_map_files(capsys, tmp_path):
    conn = kz.UnipotentDiffConnection(2, {2: [[0, 1], [0, 0]]})
    s = kz.NCSeries(kz.POSITIVE, {(): kz.RationalPoly([1]), (2,): kz.RationalPoly([1, 1])}, {"max_weight": 2})
    (tmp_path / "c.json").write_text(json.dumps(serialize.connection_to_json(conn)))
    (tmp_path / "s.json").write_text(json.dumps(serialize.series_to_json(s)))
    code, out, _ = run(capsys, "psi-map", "--connection", str(tmp_path / "c.json"),
                       "--series", str(tmp_path / "s.json"), "--vector", "0,1", "--json")
    assert code == 0
    assert json.loads(out) == [{"coeffs": ["1/1", "1/1"]}, {"coeffs": ["1/1"]}]
    code, _, _ = run(capsys, "psi-map", "--connection", str(tmp_path / "c.json"),
                     "--series", str(tmp_path / "s.json"), "--vector", "1")
    assert code == 2


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "hurwitz_kz.cli", "digamma", "--z", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and abs(float(r.stdout) - 0.42278433509846713) < 1e-13
