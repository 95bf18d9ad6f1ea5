import json
import subprocess
import sys

import pytest

from polysumset.cli import run_command


def _run(argv):
    return run_command(argv, emit=False)


def test_identity_dyson():
    code, report = _run(["identity", "--id", "dyson", "--params", '{"n":2,"m":[1,1]}'])
    assert code == 0
    assert report["status"] == "pass"
    assert report["payload"]["value"] == "-2"
    assert report["inputs"]["params"] == '{"n":2,"m":[1,1]}'


def test_identity_hypothesis_not_met():
    code, report = _run(["identity", "--id", "eq2.7", "--params", '{"n":2,"m":1,"k":1}'])
    assert (code, report["status"]) == (2, "hypothesis-not-met")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["identity", "--id", "dyson", "--params", "{not json"],
        ["identity", "--id", "nope", "--params", "{}"],
        ["--cap", "5", "sumset", "--config", "missing.json"],
        ["coeff", "--poly", "x1 + 1", "--k", "1,1"],
        ["perm", "--snevily", "--m", "5"],
    ],
)
def test_usage_errors_exit_3(argv):
    code, report = _run(argv)
    assert code == 3
    assert report["status"] == "error"


def _write(tmp_path, doc):
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(doc))
    return str(path)


THM13 = {
    "ring": {"kind": "rational"},
    "sets": [[0, 1, 2], [0, 1, 2]],
    "constraints": [
        {"kind": "scaled_distinct", "alpha": [1, 1]},
        {"kind": "congruence", "i": 1, "j": 2, "m": 5, "b": [0, 0]},
    ],
}


def test_sumset_check(tmp_path):
    code, report = _run(["sumset", "--config", _write(tmp_path, THM13), "--check", "thm1.3"])
    assert code == 0
    assert report["payload"]["actual"] == "3"
    assert report["payload"]["threshold"] == "2"


def test_sumset_enumeration(tmp_path):
    code, report = _run(["sumset", "--config", _write(tmp_path, THM13)])
    assert code == 0
    assert report["payload"]["sums"] == ["1", "2", "3"]


def test_sumset_hypothesis_not_met(tmp_path):
    doc = dict(THM13, constraints=[{"kind": "congruence", "i": 1, "j": 2, "m": 3, "b": [0, 0]}])
    code, report = _run(["sumset", "--config", _write(tmp_path, doc), "--check", "thm1.3"])
    assert (code, report["status"]) == (2, "hypothesis-not-met")


def test_sumset_cap(tmp_path, monkeypatch):
    code, report = _run(["--cap", "4", "sumset", "--config", _write(tmp_path, THM13)])
    assert code == 3 and "CapExceeded" in report["payload"]["reason"]
    monkeypatch.setenv("POLYSUMSET_CAP", "4")
    code, _ = _run(["sumset", "--config", _write(tmp_path, THM13)])
    assert code == 3


def test_coeff_and_star():
    code, report = _run(["coeff", "--poly", "x2 - x1", "--k", "1,2"])
    assert code == 0 and report["payload"]["star"] == "1" == report["payload"]["expansion"]
    code, report = _run(["star", "--poly", "x2^2 - 2*x1*x2 + x1^2", "--at", "4,4"])
    assert code == 0 and report["payload"]["value"] == "-8"
    code, report = _run(["star", "--poly", "x2^2 - 2*x1*x2 + x1^2", "--shifts", "0,0"])
    assert code == 0 and report["payload"]["value"] == "-2*x"
    code, report = _run(["star", "--poly", "x1*x2", "--at", "1/2,3"])
    assert report["payload"]["value"] == "3/2"


def test_perm_commands():
    code, report = _run(["perm", "--snevily", "--m", "5", "--n", "3", "--b", "0,0,0"])
    assert code == 0 and report["payload"]["sigma"] == ["1", "2", "3"]
    code, report = _run(["perm", "--hall", "--n", "3", "--b", "0,1,2"])
    assert code == 0
    code, report = _run(["perm", "--hall", "--n", "3", "--b", "0,0,1"])
    assert code == 2
    code, report = _run(["perm", "--parker", "--n", "3", "--b", "1,2,0"])
    assert code == 0 and report["payload"]["sigma"] == ["2", "1"]
    code, report = _run(["perm", "--explore-snevily", "--m", "5", "--n", "4"])
    assert code == 0 and report["payload"]["counterexamples"] == []


def test_deterministic_output():
    argv = ["identity", "--id", "eq2.6", "--params", '{"n":2,"m":1,"a":[2,3]}']
    assert _run(argv) == _run(argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polysumset", "perm", "--snevily", "--m", "5", "--n", "3", "--b", "0,0,0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
    assert "perm: pass" in proc.stderr
