import csv
import io
import json
import subprocess
import sys

import pytest

from logknot.center import decompose
from logknot.cli import main, run
from logknot.scalar import parse_cyclotomic
from logknot.tangle import preset


def test_compute_unknot_table():
    code, out = run(["compute", "--p", "3", "--knot", "unknot"])
    assert code == 0
    rows = [line.split() for line in out.splitlines()[1:]]
    assert [r[2] for r in rows if r[0] == "a"] == ["1*z^0"] * 4
    assert all(r[2] == "0" for r in rows if r[0] != "a")


def test_compute_json_schema_and_round_trip():
    code, out = run(["compute", "--p", "2", "--braid", "s1 s1 s1", "--strands", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["p"] == 2
    assert doc["knot"] == {"braid": "s1 s1 s1", "strands": 2, "framing": 3}
    assert [e["s"] for e in doc["a"]] == [0, 1, 2]
    assert [e["s"] for e in doc["b_plus"]] == [1] and [e["s"] for e in doc["b_minus"]] == [1]
    dec = decompose(preset("trefoil"), 2)
    for fam, s, v in dec.items():
        entry = next(e for e in doc[fam] if e["s"] == s)
        assert parse_cyclotomic(entry["exact"], 2) == v
        assert abs(complex(entry["approx"]) - complex(v)) < 1e-9


def test_compute_csv():
    code, out = run(["compute", "--p", "3", "--knot", "figure8", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4 + 2 + 2
    assert {r["family"] for r in rows} == {"a", "b_plus", "b_minus"}


@pytest.mark.parametrize(
    "argv,code",
    [
        (["compute", "--p", "3", "--braid", "s1 s1", "--strands", "2"], 3),
        (["compute", "--p", "3", "--braid", "s3", "--strands", "2"], 2),
        (["compute", "--p", "3", "--braid", "q1", "--strands", "2"], 2),
        (["compute", "--p", "3", "--knot", "nope"], 2),
        (["compute", "--p", "3"], 2),
        (["compute", "--p", "1", "--knot", "unknot"], 2),
        (["compute", "--p", "5", "--knot", "figure8", "--cap", "100"], 4),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv, io.StringIO()) == code
    assert "error" in capsys.readouterr().err


def test_cap_environment_and_flag(monkeypatch):
    monkeypatch.setenv("LOGKNOT_DIM_CAP", "10")
    assert main(["compute", "--p", "3", "--knot", "figure8"], io.StringIO()) == 4
    assert main(["compute", "--p", "3", "--knot", "figure8", "--cap", "20000"], io.StringIO()) == 0


def test_presets_listing():
    code, out = run(["presets"])
    assert code == 0
    assert "unknot" in out and "'s1 s1 s1'" in out and "'s1 S2 s1 S2'" in out and "strands=3" in out


def test_jones_and_alexander():
    code, out = run(["jones", "--p", "3", "--s", "2", "--knot", "unknot", "--format", "json"])
    assert code == 0 and json.loads(out)["jones"][0]["exact"] == "1*z^0"
    code, out = run(["alexander", "--p", "2", "--knot", "trefoil", "--lam", "0.37", "--derivative", "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and {"O", "dO", "dO_err"} <= set(doc)


def test_precision_environment(monkeypatch):
    monkeypatch.setenv("LOGKNOT_PRECISION", "80")
    code, out = run(["alexander", "--p", "2", "--knot", "trefoil", "--lam", "0.37", "--format", "json"])
    assert json.loads(out)["precision"] == 80
    code, out = run(["alexander", "--p", "2", "--knot", "trefoil", "--lam", "0.37", "--precision", "96", "--format", "json"])
    assert json.loads(out)["precision"] == 96


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--p", "2", "--suite", "relations"],
        ["verify", "--p", "2", "--suite", "yang-baxter", "--suite", "connected-sum"],
        ["verify", "--p", "3", "--knot", "trefoil", "--suite", "theorem4", "--tolerance", "1e-6"],
        ["verify", "--p", "2", "--suite", "markov", "--seed", "7", "--cases", "5"],
        ["verify", "--p", "2", "--knot", "cinquefoil", "--suite", "symmetry"],
    ],
)
def test_verify_suites_pass(argv):
    code, out = run(argv + ["--format", "json"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["results"]


def test_verify_failure_exit_code():
    # an absurd tolerance makes the derivative comparison fail
    code, _ = run(["verify", "--p", "2", "--knot", "trefoil", "--suite", "theorem4", "--tolerance", "1e-30"])
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "logknot", "presets"], capture_output=True, text=True, check=True)
    assert "trefoil" in proc.stdout
