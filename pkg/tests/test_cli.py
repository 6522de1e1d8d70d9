import json
import subprocess
import sys

import pytest

from chainmodels.cli import run


def report(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_catalog():
    code, r = report(["catalog"])
    assert code == 0 and r["passed"] and len(r["spaces"]) == 7


@pytest.mark.parametrize("argv,betti", [
    (["homology", "torus"], [1, 2, 1]),
    (["homology", "rp2.cubical", "--model", "cubical"], [1, 0, 0]),
    (["homology", "klein.cubical", "--model", "cubical-ordered"], [1, 1, 0]),
])
def test_homology(argv, betti):
    code, r = report(argv)
    assert code == 0
    assert [h["betti"] for h in r["homology"]] == betti


def test_homology_torsion():
    _, r = report(["homology", "rp2"])
    assert r["homology"][1]["torsion"] == [2] and r["homology"][1]["group"] == "Z/2"


@pytest.mark.parametrize("argv", [["homology", "torus", "--model", "cubical"],
                                  ["homology", "nowhere.json"],
                                  ["homology", "torus", "--window", "-1"],
                                  ["theory-compare", "S-Z", "S-Q", "torus.cubical"]])
def test_errors_exit_two(argv):
    code, r = report(argv)
    assert code == 2 and not r["passed"] and r["error"]


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "simplicial", "cells": [[1]]}')
    code, r = report(["homology", str(p)])
    assert code == 2 and r["error"] == "ParseError"


def test_ez_check():
    code, r = report(["ez-check", "circle", "circle"])
    assert code == 0 and r["product_betti"] == [1, 2, 1]


def test_bar_check():
    code, r = report(["bar-check", "delta1"])
    assert code == 0 and len(r["checks"]) > 10


def test_bar_check_over_budget_fails():
    code, r = report(["bar-check", "delta1", "--params", "2,2,2,2", "--budget", "1000"])
    assert code == 1
    bad = [c for c in r["checks"] if c["status"] == "FAIL"]
    assert bad and all(c["name"].startswith("bar-quasi-iso") for c in bad)


def test_operad_check():
    code, r = report(["operad-check", "ass", "--window", "1", "--max-arity", "2"])
    assert code == 0 and r["operad"]


def test_operad_check_unknown():
    code, _ = report(["operad-check", "circle", "--functor", "C_ord"])
    assert code == 2


def test_theory_compare():
    code, r = report(["theory-compare", "S-Z", "S-Q", "circle"])
    assert code == 0 and r["sides"][0]["betti"] == [1, 1]
    code, r = report(["theory-compare", "S-Z", "broken", "circle"])
    assert code == 1


def test_cone_identity():
    code, r = report(["cone-identity", "4"])
    assert code == 0 and len(r["checks"]) == 5


def test_deterministic_output(tmp_path):
    out = tmp_path / "r.json"
    c1, t1 = run(["ez-check", "circle", "rp2", "--seed", "3", "--out", str(out)])
    c2, t2 = run(["ez-check", "circle", "rp2", "--seed", "3"])
    assert t1 == t2 and out.read_text() == t1 + "\n"
    assert json.loads(t1)["seed"] == 3


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "chainmodels.cli", "homology", "circle"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["passed"]
