import json
import subprocess
import sys

import pytest

from fricke import modfunc as m
from fricke.cli import main
from fricke.qseries import QExp


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_j(capsys):
    code, out, _ = run(capsys, "expand", "j", "--order", "5")
    assert code == 0
    js = json.loads(out)
    a = QExp.from_json(js["series"])
    assert [a.coefficient(k) for k in (-1, 0, 1, 2)] == [1, 744, 196884, 21493760]


def test_expand_siegel_matches_library(capsys):
    code, out, _ = run(capsys, "expand", "siegel", "--level", "4", "--v", "1/4,0", "--order", "3")
    assert code == 0
    from fricke.modfunc import FracVec

    assert QExp.from_json(json.loads(out)["series"]) == m.siegel_g(FracVec(4, 1, 0), 3)


def test_expand_g14_table(capsys):
    code, out, _ = run(capsys, "expand", "g14", "--order", "4", "--format", "table")
    assert code == 0 and out.startswith("function")


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "fricke-difference", "--level", "4", "--order", "8"],
        ["verify", "fricke-difference", "--level", "8", "--order", "5", "--pairs", "2"],
        ["verify", "delta-dual", "--order", "10"],
        ["verify", "g14-dual", "--order", "10"],
        ["verify", "g41-dual", "--order", "10"],
        ["verify", "discriminant-weak", "--level", "2"],
        ["verify", "vandermonde", "--level", "8"],
    ],
)
def test_verify_identities_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert json.loads(out)["status"] == "pass"


def test_family_verify_and_negative_control(capsys):
    code, out, _ = run(capsys, "family", "verify", "--level", "4", "--order", "5", "--family", "fricke-functions")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run(capsys, "family", "verify", "--level", "8", "--order", "4", "--spec", "w")
    assert code == 0
    code, out, _ = run(capsys, "family", "verify", "--level", "8", "--order", "4", "--spec", "w", "--perturb", "1")
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_family_spec_forms(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"level": 4, "poly": [{"monomial": [1, 0, 0, 0], "coeff": "2/1"}]}))
    for s in (f"@{spec}", '{"poly":[x]}', "x - 3*z"):
        code, _, _ = run(capsys, "family", "verify", "--level", "4", "--order", "4", "--spec", s)
        assert code == 0


def test_family_express(capsys, tmp_path):
    target = tmp_path / "t.json"
    target.write_text(json.dumps({"series": m.f1N(8, 20).to_json()}))
    code, out, _ = run(capsys, "family", "express", "--level", "8", "--target", f"@{target}")
    assert code == 0
    assert json.loads(out)["recipe"] == "w"
    target.write_text(json.dumps((m.g41(20) * m.g41(20)).to_json()))
    code, out, _ = run(capsys, "family", "express", "--level", "8", "--max-degree", "1", "--target", f"@{target}")
    assert code == 1


def test_eval_and_act(capsys):
    code, out, _ = run(capsys, "eval", "--func", "j", "--tau", "i")
    assert code == 0 and abs(json.loads(out)["value"][0] - 1728) < 1e-6
    code, out, _ = run(capsys, "act", "--level", "8", "--matrix", "1,1,0,1", "--v", "1/8,0")
    assert json.loads(out)["image"] == "1/8,1/8"
    code, out, _ = run(capsys, "act", "--level", "8", "--matrix", "3,0,0,1")
    assert json.loads(out)["det"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "nope"],
        ["bogus"],
        ["expand", "j", "--order", "0"],
        ["expand", "siegel", "--level", "4", "--v", "1/3,0"],
        ["act", "--level", "8", "--matrix", "2,0,0,2"],
        ["family", "express", "--level", "8", "--target", "@/nonexistent.json"],
        ["eval", "--func", "j", "--tau", "1-1i"],
        ["verify", "--tol", "-1", "delta-dual"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "Traceback" not in err


def test_out_file_and_determinism(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"o{i}.json"
        subprocess.run(
            [sys.executable, "-m", "fricke", "expand", "fricke", "--level", "8", "--v", "1/8,3/8", "--order", "4", "--out", str(path)],
            check=True,
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
