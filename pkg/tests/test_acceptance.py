"""Acceptance criteria 1-7. Each prints one pass/fail line."""

import json
import subprocess
import sys
import time

import pytest

from polysumset import suite

CRITERIA = {
    "1": suite.criterion_identities,
    "2": suite.criterion_lemma21,
    "3": suite.criterion_spot_values,
    "4": suite.criterion_sumsets,
    "5": suite.criterion_permutations,
    "6": suite.criterion_matrices,
}

TIME_LIMITS = {"1": 60, "2": 30, "4": 300}


def _report(capsys, cid, title, passed, extra=""):
    with capsys.disabled():
        print(f"\nACCEPTANCE criterion {cid} ({title}): {'PASS' if passed else 'FAIL'} {extra}")


@pytest.mark.parametrize("cid", sorted(CRITERIA))
def test_criterion(cid, capsys):
    start = time.perf_counter()
    res = CRITERIA[cid](seed=0, max_n=4)
    elapsed = time.perf_counter() - start
    within = elapsed < TIME_LIMITS.get(cid, float("inf"))
    passed = res.passed and res.checks > 0 and within
    _report(capsys, cid, res.title, passed, f"[{res.checks} checks, {elapsed:.1f}s]")
    assert res.passed, res.failures
    assert res.checks > 0
    assert within, f"took {elapsed:.1f}s"


def test_criterion_cli_suite(capsys):
    proc = subprocess.run(
        [sys.executable, "-m", "polysumset", "suite", "--seed", "0", "--max-n", "4"],
        capture_output=True,
        text=True,
    )
    report = json.loads(proc.stdout)
    listed = {c["criterion"]: c["status"] for c in report["payload"]["criteria"]}
    passed = proc.returncode == 0 and listed == {str(i): "pass" for i in range(1, 8)}
    _report(capsys, "7", "CLI round trip: suite exits 0, every criterion pass", passed, f"[exit {proc.returncode}]")
    assert proc.returncode == 0, proc.stderr
    assert report["status"] == "pass"
    assert listed == {str(i): "pass" for i in range(1, 8)}
