import io
import json
import subprocess
import sys

import pytest

from prcf.cli import run
from prcf.families import petersen
from prcf.formats import to_coloring_text, to_edge_list, to_graph6


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_certify_hoffman_singleton():
    rep = report("certify", "--family", "hoffman-singleton")
    cert = rep["results"]["certificate"]
    assert (cert["lower"], cert["upper"], cert["verdict"]) == ("1/5", "1/6", "bad")
    assert rep["results"]["census"]["path_count"] == 6300
    assert rep["command"] == "certify" and rep["timing"]["seconds"] >= 0


def test_decide_k24_is_bad():
    rep = report("decide", "--family", "k2n", "--n", "4")
    assert rep["results"]["verdict"] == "bad"
    assert rep["results"]["evidence"] == "exhaustion"


def test_decide_embeds_verified_witness():
    rep = report("decide", "--family", "k2n", "--n", "3")
    wit = rep["results"]["witness"]
    assert wit["verification"] == {"proper": True, "rainbow_cycle": None, "rainbow_checked": True, "prcf": True}


def test_decide_few_colors():
    rep = report("decide", "--family", "petersen", "--few-colors")
    assert rep["results"]["evidence"] == "few-colors"


def test_decide_budget_exit_code():
    code, out, _ = call("decide", "--family", "k2n", "--n", "5", "--max-nodes", "3")
    assert code == 2
    assert json.loads(out)["results"]["verdict"] == "unknown"


def test_threshold_polygon():
    rep = report("threshold", "--polygon", "6", "--prime-power")
    res = rep["results"]
    assert res["result"] == 90 and res["unconstrained"] == 86
    assert res["orders"]["moore_style"] == 508276320301


def test_threshold_octagon():
    res = report("threshold", "--octagon")["results"]
    assert res["threshold_1_8"] == 128 and res["threshold_1_6"] == 128


@pytest.mark.parametrize(
    "params, verdict",
    [(["d=6", "r=90"], "bad"), (["r=7"], "bad"), (["d=6", "r=3"], "inconclusive")],
)
def test_certify_params(params, verdict):
    rep = report("certify", "--params", *params)
    assert rep["results"]["certificate"]["verdict"] == verdict


def test_certify_octagon_params_reports_both_thresholds():
    res = report("certify", "--params", "q=128")["results"]
    assert res["certificate"]["lower"] == "1/8"
    assert res["alternative_threshold_1_6"]["lower"] == "1/6"
    assert res["certificate"]["verdict"] == res["alternative_threshold_1_6"]["verdict"] == "bad"


def test_certify_noncriticality():
    res = report("certify", "--noncriticality")["results"]
    assert (res["lower"], res["upper"]) == (1134, 1050)


def test_crosscheck_exit_code(monkeypatch):
    import prcf.certificates as certs

    monkeypatch.setitem(certs.HOSI_REFERENCE, "upper", 1051)
    code, _, err = call("certify", "--noncriticality")
    assert code == 3 and "mismatch" in err


def test_analyze_and_census():
    res = report("analyze", "--family", "pg", "--q", "2")["results"]
    assert (res["girth"], res["diameter"]) == (6, 3)
    assert res["classification"]["describe"] == "GeneralizedPolygon(d=3, {3})"
    res = report("census", "--family", "pg", "--q", "2")["results"]
    assert (res["path_count"], res["cycle_count"], res["coverage_ratio"]) == (168, 28, "1/1")


def test_family_emits_formats():
    code, out, _ = call("family", "--family", "petersen", "--emit", "graph6")
    assert code == 0 and out.strip() == to_graph6(petersen())
    code, out, _ = call("family", "--family", "petersen")
    assert out == to_edge_list(petersen())
    code, out, _ = call("family", "--family", "petersen", "--emit", "dot")
    assert out.startswith("graph G {")


def test_color_methods(tmp_path):
    res = report("color", "--family", "petersen", "--subdivide", "2", "--method", "subdivision-k")["results"]
    assert res["coloring"]["verification"]["prcf"]
    res = report("color", "--family", "pg", "--q", "2", "--subdivide", "1", "--method", "subdivision-1")["results"]
    assert res["coloring"]["verification"]["prcf"]
    target = tmp_path / "c.txt"
    res = report("color", "--family", "petersen", "--out", str(target))["results"]
    assert target.read_text() == res["coloring"]["text"]
    code, _, err = call("color", "--family", "petersen", "--method", "subdivision-k")
    assert code == 1 and "provenance" in err


def test_check_with_input_files(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("0 1\n1 2\n0 2\n")
    c = tmp_path / "c.txt"
    c.write_text(to_coloring_text([0, 1, 2]))
    res = report("check", "--input", str(g), "--coloring", str(c))["results"]
    assert res["verification"]["proper"] and not res["verification"]["prcf"]
    assert sorted(res["verification"]["rainbow_cycle"]) == [0, 1, 2]
    g6 = tmp_path / "g.g6"
    g6.write_text(to_graph6(petersen()) + "\n")
    assert report("analyze", "--input", str(g6))["results"]["girth"] == 5


def test_invalid_input_exit_codes(tmp_path):
    assert call("bogus")[0] == 1
    assert call("decide", "--family", "k2n", "--n", "4", "--nope")[0] == 1
    assert call("decide", "--family", "cycle", "--n", "2")[0] == 1
    assert call("decide")[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n")
    assert call("analyze", "--input", str(bad))[0] == 1
    assert call("analyze", "--input", str(tmp_path / "missing"))[0] == 1


def test_reports_byte_identical_in_deterministic_mode():
    argv = ["census", "--family", "hoffman-singleton", "--workers", "1", "--no-timing"]
    assert call(*argv)[1] == call(*argv)[1]
    argv = ["decide", "--family", "petersen", "--no-timing"]
    assert call(*argv)[1] == call(*argv)[1]


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PRCF_MAX_NODES", "3")
    code, out, _ = call("decide", "--family", "k2n", "--n", "5")
    assert code == 2
    assert json.loads(out)["budget"]["max_nodes"] == 3
    monkeypatch.setenv("PRCF_WORKERS", "2")
    monkeypatch.delenv("PRCF_MAX_NODES")
    assert report("census", "--family", "petersen")["workers"] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "prcf", "threshold", "--polygon", "3"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["results"]["result"] == 10
