from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from enda.cli import main


def schema(name: str) -> dict:
    return json.loads(resources.files("enda").joinpath("schemas", f"{name}.schema.json").read_text())


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, name: str, *argv: str) -> tuple[int, dict]:
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return code, data


def test_rank1_factor(capsys):
    code, data = run_json(capsys, "rank1", "rank1", "factor", "--ring", "Z", "--matrix", "[[2,4],[3,6]]")
    assert code == 0
    assert data == {"column": [[2], [3]], "row": [[1, 2]]}


def test_rank1_certificate(capsys):
    code, data = run_json(capsys, "rank1", "rank1", "factor", "--paper-c")
    assert code == 0
    assert data["certificate"]["searchBound"]["exhausted"] is True


def test_rank1_rank(capsys):
    code, out, _ = run(capsys, "rank1", "rank", "--paper-m")
    assert code == 0 and out.strip() == "rank = 2"


def test_gsolve(capsys):
    code, data = run_json(capsys, "gsolve", "gsolve", "--ring", "F2", "--m", "3")
    assert code == 0
    assert data["dimension"] == 1 and data["basis"] == ["x1*x2 + x2*x1"]


def test_dedekind(capsys):
    code, data = run_json(capsys, "dedekind", "dedekind", "report")
    assert code == 0 and data["allHold"]


def test_gverify(capsys):
    code, out, _ = run(capsys, "gverify", "--paper-g")
    assert code == 0 and "solution" in out
    code, out, _ = run(capsys, "gverify", "--ring", "Z", "--m", "3", "--poly", "x1*x2")
    assert code == 1 and "x2*x1" in out


def test_tau_build_classify_and_eval(capsys, tmp_path):
    code, recipe = run_json(capsys, "recipe", "tau", "build", "--paper-g")
    assert code == 0
    path = tmp_path / "recipe.json"
    path.write_text(json.dumps(recipe))
    code, data = run_json(capsys, "classify", "recipe", "classify", "--recipe", str(path))
    assert code == 0 and data["label"] == "PSemiInner(2)"
    code, out, _ = run(capsys, "poly", "eval", "--recipe", str(path), "--poly", "x1 + x2")
    assert code == 0 and out.strip() == "x1 + x2 + x1*x2 + x2*x1"
    code, out, _ = run(capsys, "poly", "eval", "--recipe", str(path), "--poly", "x1 + x2 + x1*x2 + x2*x1", "--inverse")
    assert out.strip() == "x1 + x2"
    code, data = run_json(capsys, "tau", "tau", "verify", "--recipe", str(path))
    assert code == 0 and data["exhaustive"]["periodIsIdentity"]


def test_endo_standard_base(capsys, tmp_path):
    _, recipe = run_json(capsys, "recipe", "tau", "build", "--ring", "F3", "--m", "4", "--poly",
                         "x1*x1*x2 + x1*x2*x1 + x2*x1*x1 + x1*x2*x2 + x2*x1*x2 + x2*x2*x1")
    path = tmp_path / "r.json"
    path.write_text(json.dumps(recipe))
    code, out, _ = run(capsys, "endo", "standard-base", "--recipe", str(path))
    assert code == 0 and out.startswith("base:")


def test_conjugate_units(capsys):
    fam = {
        "ring": "Z",
        "matrices": {"P_1_1": [[1, -1], [0, 0]], "P_1_2": [[0, 1], [0, 0]], "P_2_1": [[1, -1], [1, -1]], "P_2_2": [[0, 1], [0, 1]]},
    }
    code, out, _ = run(capsys, "conjugate-units", "--family", json.dumps(fam))
    assert code == 0 and "verified" in out
    fam["matrices"]["P_1_2"] = [[0, 2], [0, 0]]
    code, _, _ = run(capsys, "conjugate-units", "--family", json.dumps(fam))
    assert code == 2


def test_poly_eval_canonicalizes(capsys):
    code, out, _ = run(capsys, "poly", "eval", "--ring", "Q", "--m", "3", "--poly", "x2*x1 + (1/2)*x1 + x1")
    assert code == 0 and out.strip() == "(3/2)*x1 + x2*x1"


@pytest.mark.parametrize(
    "argv",
    [
        ["tau", "build", "--ring", "Z", "--m", "3", "--poly", "x1*x2 + x2*x1"],
        ["rank1", "factor", "--ring", "Z", "--matrix", "[[1,0],[0,1]]"],
        ["rank1", "factor", "--ring", "F4", "--matrix", "[[1]]"],
        ["poly", "eval", "--ring", "F3", "--poly", "5*x1"],
        ["gsolve", "--ring", "F2"],
        ["recipe", "classify", "--recipe", "/nonexistent.json"],
        ["bogus"],
    ],
)
def test_input_errors_exit_with_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_selftest_json(capsys):
    code, data = run_json(capsys, "selftest", "selftest", "--scale", "0.02")
    assert code == 0 and data["ok"]
    assert len(data["checks"]) == 10


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "enda", "gsolve", "--ring", "F2", "--m", "3", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["basis"] == ["x1*x2 + x2*x1"]


def test_same_seed_gives_identical_output(capsys):
    argv = ["selftest", "--scale", "0.02", "--seed", "5", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
