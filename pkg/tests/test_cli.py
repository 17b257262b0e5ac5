import json
import subprocess
import sys
from pathlib import Path

import pytest

from symhh.cli import (DocumentError, category_from_document, category_to_document,
                       load_category, main)
from symhh.dgcat import BUILTINS, validate

DATA = Path(__file__).parent / "data"


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "symhh", *args],
                          capture_output=True, text=True, check=False)


def report(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_hh_of_s2_k(capsys):
    code, rep = report(capsys, ["hh", "--input", "k", "--n", "2", "--degree", "2"])
    assert code == 0
    rows = rep["results"]["homology"]
    assert [(r["degree"], r["dimension"], r["exact"]) for r in rows] == [
        (0, 2, True), (1, 0, True), (2, 0, True)]


def test_decompose_s3_k(capsys):
    code, rep = report(capsys, ["decompose", "--input", "k", "--n", "3", "--degree", "0"])
    assert code == 0
    res = rep["results"]
    assert [p["dimension"] for p in res["partitions"]] == [1, 1, 1]
    assert res["hh_dimension"] == 3 and res["zeta_is_isomorphism"]


def test_verify_quiver_homotopies(capsys):
    code, rep = report(capsys, ["verify", "--input", "quiver", "--suite", "homotopies",
                                "--bounds", "n=2", "m=3"])
    assert code == 0
    assert rep["results"]["passed"]
    assert all(c["passed"] for c in rep["results"]["checks"])


def test_validate_document(capsys):
    code, rep = report(capsys, ["validate", "--input", str(DATA / "quiver.json")])
    assert code == 0 and rep["results"]["passed"]


def test_output_is_byte_identical_across_runs():
    args = ["decompose", "--input", "quiver", "--n", "2", "--degree", "1"]
    a, b = run_cli(*args), run_cli(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_json_file_output(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, rep = report(capsys, ["hh", "--input", "k", "--n", "1", "--degree", "1",
                                "--json", str(out)])
    assert code == 0
    assert json.loads(out.read_text()) == rep


def test_timing_is_opt_in(capsys):
    _, rep = report(capsys, ["hh", "--input", "k", "--n", "1", "--degree", "0"])
    assert "wall_time_seconds" not in rep
    _, rep = report(capsys, ["hh", "--input", "k", "--n", "1", "--degree", "0", "--timing"])
    assert "wall_time_seconds" in rep


@pytest.mark.parametrize("argv", [
    ["hh", "--input", "k", "--n", "9"],
    ["verify", "--input", "k", "--suite", "fg", "--bounds", "n=9"],
    ["verify", "--input", "k", "--suite", "fg", "--bounds", "zz=1"],
    ["verify", "--input", "k", "--suite", "hopf", "--max-len", "2"],
])
def test_bounds_errors(argv, capsys):
    assert main(argv) == 5
    assert "bounds error" in capsys.readouterr().err


def _write(tmp_path, doc):
    p = tmp_path / "cat.json"
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_parse_errors(tmp_path, capsys):
    assert main(["validate", "--input", str(tmp_path / "missing.json")]) == 3
    assert main(["validate", "--input", _write(tmp_path, "{not json")]) == 3
    doc = json.loads((DATA / "quiver.json").read_text())
    doc["composition"] = [{"left": "f", "right": "e1", "terms": [{"coef": 0.5, "morphism": "f"}]}]
    assert main(["validate", "--input", _write(tmp_path, doc)]) == 3
    err = capsys.readouterr().err
    assert err.count("parse error") == 3


def test_invalid_category(tmp_path, capsys):
    doc = {"objects": ["*"],
           "morphisms": [{"name": "id", "source": "*", "target": "*", "degree": 0},
                         {"name": "x", "source": "*", "target": "*", "degree": 1}],
           "identities": {"*": "id"},
           "differential": [{"of": "id", "terms": [{"coef": 1, "morphism": "x"}]}]}
    assert main(["validate", "--input", _write(tmp_path, doc)]) == 4
    assert "unit not closed" in capsys.readouterr().err


def test_usage_error():
    r = run_cli("hh", "--input", "k")
    assert r.returncode == 2


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_document_round_trip(name):
    A = BUILTINS[name]()
    B = category_from_document(json.loads(json.dumps(category_to_document(A))))
    assert validate(B) is None
    assert B.morphisms == A.morphisms and B.identities == A.identities
    assert sorted(B.all_compositions()) == sorted(A.all_compositions())
    assert B.differential == A.differential


def test_document_rejects_unknown_keys():
    with pytest.raises(DocumentError):
        category_from_document({"objects": [], "morphisms": [], "identities": {}, "extra": 1})


def test_rational_coefficients_in_documents():
    doc = json.loads((DATA / "quiver.json").read_text())
    doc["composition"] = [{"left": "f", "right": "e1", "terms": [{"coef": "1/1", "morphism": "f"}]}]
    A = category_from_document(doc)
    assert validate(A) is None


def test_load_builtin():
    assert load_category("quiver").name == "quiver"
