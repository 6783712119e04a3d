"""Command line front end: reports, exit codes and the JSON contract."""
from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path as FsPath

import pytest

from computads import fixtures, parse
from computads.cli import EXIT_ERROR, EXIT_OK, EXIT_UNKNOWN, js, run

FIX = FsPath(__file__).resolve().parent.parent / "fixtures"


def call(*argv):
    buf = io.StringIO()
    code = run([str(a) for a in argv], buf)
    return code, json.loads(buf.getvalue())


def no_floats(x) -> bool:
    if isinstance(x, float):
        return False
    if isinstance(x, dict):
        return all(no_floats(v) for v in x.values())
    if isinstance(x, list):
        return all(no_floats(v) for v in x)
    return True


def f(name):
    return FIX / f"{name}.cmp"


def test_present_delta2dot():
    code, r = call("present", f("delta2dot"))
    assert code == EXIT_OK and r["schema"] == 1 and r["command"] == "present"
    assert r["status"] == "complete" and r["total"] == 10 and len(r["rules"]) == 3


def test_present_infinite_hom():
    code, r = call("present", f("circle"))
    assert code == EXIT_OK and r["homs"] == [{"source": "v", "target": "v", "size": "infinite"}]


def test_cw_and_deficiency():
    code, r = call("cw", f("delta2dot"), "--matrices")
    assert code == EXIT_OK and r["chi"] == 2 and r["betti"] == [1, 0, 1, 0] and r["pi2_rank"] == 1
    assert set(r["boundary"]) == {"d1", "d2", "d3"}
    code, r = call("cw", f("h_delta2"))
    assert r["cells"] == [3, 4, 3, 1] and r["chi"] == 1
    code, r = call("deficiency", f("torus"))
    assert code == EXIT_OK and r["deficiency"] == 1 and r["not_thin_by_chi"] is True


def test_pi1_and_thin():
    code, r = call("pi1", f("torus"))
    assert code == EXIT_OK and r["components"][0]["abelianization"] == {"free_rank": 2, "torsion": []}
    assert r["trivial"]["verdict"] == "no"
    code, r = call("thin", f("trivial_group"))
    assert code == EXIT_OK and r["category"] is None and r["groupoid"]["verdict"] == "yes"
    code, r = call("thin", f("increasing"))
    assert r["category"]["verdict"] == "no"
    code, r = call("thin", f("sphere"))
    assert r["category"]["verdict"] == "yes"


def test_graph_commands():
    code, r = call("analyze-graph", f("weak_tree"))
    assert code == EXIT_OK and r["weak_tree"] is True and r["fair"] is False
    code, r = call("analyze-graph", f("nonincreasing"))
    assert r["monotone"] == {"type": "Monotone", "n": 1}
    code, r = call("free-info", f("two_table"))
    assert code == EXIT_OK and r["free"] is True


def test_synth_outputs_parse():
    for kind in ("efficient", "category", "strict", "monotone"):
        code, r = call("synth", kind, f("increasing"))
        assert code == EXIT_OK
        doc = parse(r["document"])
        assert len(doc.entity.cells) == r["cells2"]
    code, r = call("synth", "category", f("weak_tree"))
    assert r["result"] == "not-fair"


def test_fcs_and_thin2():
    code, r = call("fcs", f("x_counterexample"))
    assert code == EXIT_OK and r["fcs"]["verdict"] == "no"
    code, r = call("fcs", f("delta2"))
    assert r["fcs"]["verdict"] == "yes"
    code, r = call("fcs", f("dstr_dot"), "--synth")
    assert r["count"] == 2
    code, r = call("thin2", f("h_delta2"))
    assert code == EXIT_OK and r["verdict"] == "thin"
    code, r = call("thin2", f("h_deltadot"))
    assert code == EXIT_UNKNOWN and r["verdict"] == "unknown"


@pytest.mark.parametrize("position", ["before", "after"])
def test_limits_give_timeout(position):
    argv = ["present", f("delta2dot")]
    argv = (["--limits", "kb_rules=1"] + argv) if position == "before" else argv + ["--limits", "kb_rules=1"]
    code, r = call(*argv)
    assert code == EXIT_UNKNOWN and r["status"] == "timeout"


def test_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.cmp"
    bad.write_text("object x\ncell2 a : f => g\n")
    code, r = call("present", bad)
    assert code == EXIT_ERROR and r["error"] == "UnresolvedReference"
    code, r = call("present", tmp_path / "missing.cmp")
    assert code == EXIT_ERROR
    code, r = call("present", f("trivial_group"))
    assert code == EXIT_ERROR
    code, r = call("cw", f("delta2dot"), "--limits", "nonsense=3")
    assert code == EXIT_ERROR
    assert "computads:" in capsys.readouterr().err


def test_fixtures_command(tmp_path):
    code, r = call("fixtures", "--samples", "25", "--seed", "7")
    assert code == EXIT_OK and r["sampled"] == 25 and r["seed"] == 7
    assert [row["name"] for row in r["fixtures"]] == fixtures.names()
    code, r = call("fixtures", "--export", tmp_path)
    assert len(r["exported"]) == len(fixtures.names())


@pytest.mark.parametrize("name", fixtures.names())
def test_every_report_is_integer_json(name):
    for cmd in ("cw", "pi1", "deficiency", "thin", "present", "fcs", "free-info", "analyze-graph"):
        buf = io.StringIO()
        code = run([cmd, str(f(name))], buf)
        body = json.loads(buf.getvalue())
        assert code in (EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN)
        assert body["schema"] == 1 and no_floats(body)


def test_js_rejects_floats():
    with pytest.raises(TypeError):
        js({"x": 0.5})


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "computads.cli", "cw", str(f("torus"))],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["betti"] == [1, 2, 1, 0]
