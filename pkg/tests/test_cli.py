import json
import subprocess
import sys

import pytest

from twocomm import algebra as al
from twocomm.cli import main

HAM_I = {"algebra": {"kind": "Quaternion", "m": 1, "a": -1, "b": -1, "field": "Q"}, "coords": ["0", "1", "0", "0"]}


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_hamilton_i(capsys, monkeypatch):
    code, out, _ = run(capsys, ["decompose"], json.dumps(HAM_I), monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] is True and doc["path"] == "DivisionCase"
    assert doc["division_trace"]["lambda"] == "0"


def test_decompose_byte_identical(capsys, monkeypatch, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps(al.one(al.matrix_quaternion_algebra(2)).to_json()))
    _, a, _ = run(capsys, ["decompose", str(f), "--seed", "7"])
    _, b, _ = run(capsys, ["decompose", str(f), "--seed", "7"])
    assert a == b


def test_roundtrip_verify(capsys, tmp_path):
    for alg in (al.HAMILTON, al.matrix_algebra(3), al.matrix_quaternion_algebra(2)):
        src = tmp_path / "a.json"
        src.write_text(json.dumps(al.one(alg).to_json()))
        code, out, _ = run(capsys, ["decompose", str(src)])
        assert code == 0
        cert = tmp_path / "c.json"
        cert.write_text(out)
        code, out, _ = run(capsys, ["verify", str(cert)])
        assert code == 0 and json.loads(out)["verified"] is True


def test_verify_rejects_tampered(capsys, tmp_path):
    src = tmp_path / "a.json"
    src.write_text(json.dumps(HAM_I))
    _, out, _ = run(capsys, ["decompose", str(src)])
    doc = json.loads(out)
    doc["a"]["coords"][0] = "5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, ["verify", str(bad)])
    assert code == 1 and json.loads(out)["verified"] is False


def test_field_refused(capsys, monkeypatch):
    doc = {"algebra": {"kind": "MatrixOverField", "m": 1, "field": "Q"}, "coords": ["3"]}
    code, _, err = run(capsys, ["decompose"], json.dumps(doc), monkeypatch)
    assert code == 1 and json.loads(err)["error"] == "IsAField"


@pytest.mark.parametrize(
    "text,path",
    [
        ("{not json", "$"),
        (json.dumps({"algebra": {"kind": "Quaternion", "a": -1, "b": -1}, "coords": ["1", 2.5, "0", "0"]}), "$.coords[1]"),
        (json.dumps({"algebra": {"kind": "Octonion"}, "coords": []}), "$.algebra.kind"),
        (json.dumps({"algebra": {"kind": "Quaternion", "a": 1, "b": -1}, "coords": ["1", "0", "0", "0"]}), "$"),
        (json.dumps({"algebra": {"kind": "Quaternion", "a": -1, "b": -1}, "coords": ["1"]}), "$"),
    ],
)
def test_malformed_inputs(capsys, monkeypatch, text, path):
    code, out, err = run(capsys, ["decompose"], text, monkeypatch)
    assert code == 2 and out == ""
    doc = json.loads(err)
    assert doc["error"] == "MalformedInput" and doc["path"] == path


def test_unknown_command(capsys):
    code, _, _ = run(capsys, ["frobnicate"])
    assert code == 2


def test_ncpoly(capsys, monkeypatch):
    f = {"vars": 3, "terms": [{"word": [1, 2, 3], "coeff": "1"}, {"word": [3, 2, 1], "coeff": "-1"}]}
    code, out, _ = run(capsys, ["ncpoly"], json.dumps(f), monkeypatch)
    doc = json.loads(out)
    assert code == 0 and doc["m"] == 3 and doc["expand_check"] is True
    f["terms"][1]["coeff"] = "1"
    code, _, err = run(capsys, ["ncpoly"], json.dumps(f), monkeypatch)
    assert code == 1 and json.loads(err)["error"] == "NotAnIdentity"


def test_euler(capsys):
    code, out, _ = run(capsys, ["euler", "--stage", "8:1", "--power", "8"])
    doc = json.loads(out)
    assert code == 0 and doc["conclusion"] == "NotSubequivalent" and doc["coefficient"] == "40320"
    code, out, _ = run(capsys, ["euler", "--stage", "7:1", "--power", "8"])
    assert code == 1 and json.loads(out)["conclusion"] == "Inconclusive"
    code, _, _ = run(capsys, ["euler", "--stage", "2:1", "--stage", "4:2", "--power", "2"])
    assert code == 0
    code, _, _ = run(capsys, ["euler", "--stage", "8-1", "--power", "8"])
    assert code == 2
    code, _, _ = run(capsys, ["euler", "--stage", "0:1", "--power", "8"])
    assert code == 2


def test_villadsen(capsys):
    code, out, _ = run(capsys, ["villadsen", "--m", "1", "--stages", "3"])
    doc = json.loads(out)
    assert code == 0 and doc["all_certified"] is True
    assert [s["k_n"] for s in doc["stages"]] == [8, 16, 32]
    assert doc["stages"][0]["z_n"][0][0] == ["0", "0", "-1"]
    assert [c["j"] for c in doc["coverage"]] == [1, 2]


def test_oracle(capsys):
    code, out, _ = run(capsys, ["oracle", "--p", "2", "--m", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["covers_all"] and doc["total"] == 16
    code, _, err = run(capsys, ["oracle", "--p", "2", "--m", "1"])
    assert code == 1 and json.loads(err)["error"] == "IsAField"
    code, _, _ = run(capsys, ["oracle", "--p", "6"])
    assert code == 2
    code, out, _ = run(capsys, ["oracle", "--trials", "3", "--seed", "2"])
    assert code == 0 and json.loads(out)["all_verified"]


def test_bott(capsys, monkeypatch):
    pts = {"points": [["3/5", "4/5", "0"], [0, 0, 1]]}
    code, out, _ = run(capsys, ["bott"], json.dumps(pts), monkeypatch)
    doc = json.loads(out)
    assert code == 0 and doc["rank"] == 1 and doc["idempotent"] and doc["self_adjoint"]
    assert doc["trace"] == {"re": "1", "im": "0"}
    code, _, err = run(capsys, ["bott"], json.dumps({"points": [[1, 1, 0]]}), monkeypatch)
    assert code == 1 and json.loads(err)["error"] == "NotOnSphere"


def test_hyperplane(capsys, monkeypatch):
    a = al.one(al.matrix_quaternion_algebra(2)).to_json()
    code, out, _ = run(capsys, ["hyperplane", "--t-lambda", "1"], json.dumps(a), monkeypatch)
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and all(doc["checks"].values())


def test_info(capsys):
    code, out, _ = run(capsys, ["info"])
    assert code == 0 and "decompose" in json.loads(out)["commands"]


def test_module_entry_point(tmp_path):
    src = tmp_path / "i.json"
    src.write_text(json.dumps(HAM_I))
    outs = [
        subprocess.run([sys.executable, "-m", "twocomm", "decompose", str(src)], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["verified"] is True
