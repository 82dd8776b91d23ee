import io
import json

import pytest

from psg.cli import run
from psg.coordinatize import right_embedding
from psg.grassmann import gn_structure_constants
from psg.modules import direct_sum, gn_beta, opposite, regular_module
from psg.superalgebra import tensor_product


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, json.loads(buf.getvalue()), buf.getvalue()


def dump(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_gn_emit_then_check(tmp_path):
    g3 = tmp_path / "g3.json"
    code, rep, _ = call("gn", "--n", "3", "--emit", str(g3))
    assert code == 0 and rep["emitted"] == str(g3)
    code, rep, _ = call("check", "--algebra", str(g3), "--suite", "poisson")
    assert code == 0 and rep["overall"] == "pass" and len(rep["checks"]) == 5


def test_module_gn_beta_check():
    code, rep, _ = call("module", "gn-beta", "--n", "2", "--beta", "1/2", "--check")
    assert code == 0 and rep["kind"] == "contact"


def test_malformed_inputs_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2')
    code, rep, _ = call("check", "--algebra", str(bad))
    assert code == 2 and "invalid JSON" in rep["error"]
    code, rep, _ = call("check", "--algebra", str(tmp_path / "missing.json"))
    assert code == 2
    wrong = dump(tmp_path / "w.json", {"dim": 2, "parity": [0]})
    assert call("check", "--algebra", wrong)[0] == 2
    assert run(["frobnicate"], stdout=io.StringIO()) == 2


def test_unknown_suite_is_input_error(tmp_path):
    g = dump(tmp_path / "g.json", gn_structure_constants(1).to_json())
    assert call("check", "--algebra", g, "--suite", "nonsense")[0] == 2


def test_counterexample_exit_1(tmp_path):
    g = gn_structure_constants(2)
    data = g.to_json()
    data["bracket"] = [row for row in data["bracket"] if not (row[0] == 1 and row[1] == 1)]
    data["bracket"].append([1, 1, 0, "2"])
    path = dump(tmp_path / "bad_bracket.json", data)
    code, rep, _ = call("check", "--algebra", path, "--suite", "poisson")
    assert code == 1 and rep["overall"] == "fail"
    failing = [c for c in rep["checks"] if c["verdict"] == "fail"]
    assert failing and "tuple" in failing[0]


def test_field_from_environment(monkeypatch):
    monkeypatch.setenv("PSG_FIELD", "fp:7")
    code, rep, _ = call("gn", "--n", "2", "--check")
    assert code == 0 and rep["field"] == "fp:7"
    monkeypatch.setenv("PSG_FIELD", "fp:4")
    assert call("gn", "--n", "1")[0] == 2


def test_characteristic_conflict(monkeypatch):
    monkeypatch.setenv("PSG_FIELD", "fp:3")
    code, rep, _ = call("module", "gn-beta", "--n", "1", "--beta", "1/3")
    assert code == 2


def test_reports_are_deterministic():
    a = call("module", "gn-beta", "--n", "2", "--beta", "3/2", "--check", "--irreducible")[2]
    b = call("module", "gn-beta", "--n", "2", "--beta", "3/2", "--check", "--irreducible")[2]
    assert a == b


def test_kantor_and_convert(tmp_path):
    g = dump(tmp_path / "g.json", gn_structure_constants(2).to_json())
    code, rep, _ = call("kantor", "--algebra", g, "--check")
    assert code == 0 and rep["artifact"]["basis_labels"][4] == "1~"
    code, rep, _ = call("convert-bracket", "--algebra", g, "--to", "jordan")
    assert code == 0


def test_module_file_reference_and_iso(tmp_path):
    g = gn_structure_constants(2)
    dump(tmp_path / "g2.json", g.to_json())
    v = gn_beta(2, 1).to_json(algebra_ref="g2.json")
    w = opposite(gn_beta(2, 1)).to_json(algebra_ref="g2.json")
    vp, wp = dump(tmp_path / "v.json", v), dump(tmp_path / "w.json", w)
    code, rep, _ = call("iso", "--left", vp, "--right", wp, "--parity", "odd")
    assert code == 0 and rep["checks"][0]["parity"] == "odd"
    code, rep, _ = call("iso", "--left", vp, "--right", wp, "--parity", "even")
    assert code == 1 and rep["checks"][0]["status"] == "none"


def test_decompose_and_identify(tmp_path):
    g = gn_structure_constants(1)
    reg = regular_module(g)
    path = dump(tmp_path / "m.json", direct_sum(reg, opposite(reg)).to_json())
    code, rep, _ = call("decompose", "--module", path)
    assert code == 0
    assert sorted(c["tag"] for c in rep["checks"][0]["components"]) == ["reg", "reg-op"]
    path = dump(tmp_path / "b.json", gn_beta(2, -3).to_json())
    code, rep, _ = call("identify", "--module", path)
    assert code == 0 and rep["checks"][0]["beta"] == "-3"


def test_env():
    code, rep, _ = call("env", "--n", "2")
    assert code == 0
    mat = [c for c in rep["checks"] if c["name"] == "matrix-algebra"][0]
    assert mat["k"] == 4 and mat["center_dim"] == 1


def test_coordinatize_files(tmp_path):
    q = gn_structure_constants(1)
    p = tensor_product(q, gn_structure_constants(2))
    pp = dump(tmp_path / "p.json", p.to_json())
    ep = dump(tmp_path / "emb.json", right_embedding(q, 2).to_json())
    out, wit = tmp_path / "a.json", tmp_path / "w.json"
    code, rep, _ = call("coordinatize", "--algebra", pp, "--embedding", ep, "--out", str(out), "--witness", str(wit))
    assert code == 0 and rep["checks"][0]["dim_a"] == 2
    assert json.loads(out.read_text())["dim"] == 2
    assert json.loads(wit.read_text())["rows"] == 8


def test_golden_zero_and_inconsistent():
    code, rep, _ = call("golden", "--n", "1", "--alpha", "0")
    assert code == 0 and rep["checks"][0]["resolved_beta"] == "0"
    code, rep, _ = call("golden", "--n", "1", "--alpha", "1")
    assert code == 1 and rep["checks"][0]["outcome"] == "inconsistent"
    assert rep["checks"][0]["diagnostics"][0]["match"] == "straight"


def test_bracket_command():
    code, rep, _ = call("bracket", "--m", "1", "--n", "1", "x1", "y1")
    assert code == 0 and rep["bracket"] == "1"
    assert call("bracket", "--n", "1", "e7", "e1")[0] == 2
