import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from _oracles import phi, takagi_oracle
from takagi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    data = json.loads(out)
    assert data["exit_code"] == code
    assert set(data) == {"command", "inputs", "output", "certificates", "exit_code"}
    return code, data


def test_eval(capsys):
    code, data = run_json(capsys, "eval", "1/7")
    assert code == 0 and data["output"]["value"] == "22/49"
    code, data = run_json(capsys, "eval", "3/8", "--partial-k", "3")
    # 3/8 = 0.011: one zero and two ones among the first three digits
    partial = sum((phi(Fraction(3, 8) * 2**n) / 2**n for n in range(3)), Fraction(0))
    assert data["output"]["partial"] == {"k": 3, "value": str(partial), "slope": 1 - 2}


def test_eval_domain_error(capsys):
    code, data = run_json(capsys, "eval", "2")
    assert code == 2 and "error" in data["output"]
    code, data = run_json(capsys, "eval", "x/y")
    assert code == 2


def test_expand(capsys):
    _, data = run_json(capsys, "expand", "3/7")
    assert data["output"]["expansion"] == "[3,(5 5 4)]" and data["output"]["tail"] == "periodic"


def test_solve(capsys):
    _, data = run_json(capsys, "solve", "777/2048", "--all", "--depth", "1")
    xs = {s["x"] for s in data["output"]["solutions"]}
    assert {"257/2048", "1357/12288"} <= xs
    assert all(s["verified"] for s in data["output"]["solutions"])
    for x in xs:
        assert takagi_oracle(Fraction(x)) == Fraction(777, 2048)


def test_solve_truncated(capsys):
    code, data = run_json(capsys, "solve", "22/49")
    assert code == 3 and data["output"]["solutions"] == []


def test_cardinality(capsys):
    code, data = run_json(capsys, "cardinality", "7/12")
    assert code == 0
    assert data["output"]["kind"] == "Exact" and data["output"]["count"] == 4
    assert data["certificates"]
    _, data = run_json(capsys, "cardinality", "1/2")
    assert data["output"]["kind"] == "Infinite" and data["output"]["count"] is None


def test_levelset(capsys):
    _, data = run_json(capsys, "levelset", "1/3")
    assert data["output"]["points"] == ["1/12", "11/12"] and data["output"]["complete"]
    _, data = run_json(capsys, "levelset", "1/3", "--oracle", "--depth", "20")
    assert len(data["output"]["clusters"]) == 2
    code, _ = run_json(capsys, "levelset", "777/2048")
    assert code == 2


def test_humps(capsys):
    _, data = run_json(capsys, "humps", "--max-order", "4", "--filter", "non_subsidiary")
    assert data["output"]["count"] == 1 + 0 + 1 + 3
    code, out, _ = run(capsys, "humps", "--max-order", "2", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8


def test_measure(capsys):
    _, data = run_json(capsys, "measure", "--depth-n", "0", "--max-k", "60")
    assert data["output"]["upper"] == "35/72" and data["output"]["lower"] == "5/12"


def test_witness(capsys):
    _, data = run_json(capsys, "witness", "3")
    assert data["output"]["target_cardinality"] == 6
    assert data["output"]["ordinate"] == "73/192"


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "--depth", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and list(rows[0]) == ["x_rational", "x_decimal", "y_rational", "y_decimal"]
    assert len(rows) == 9
    for r in rows:
        assert takagi_oracle(Fraction(r["x_rational"])) == Fraction(r["y_rational"])
        assert float(r["y_decimal"]) == float(Fraction(r["y_rational"]))


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "takagi", "cardinality", "73/192"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["output"]["count"] == 6
    assert b"Exact(6)" in a.stderr
