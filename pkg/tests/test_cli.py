import io
import json
import subprocess
import sys

import pytest

from motivic_hall import cli, verify
from motivic_hall.hall import CheckEntry, Report

A2_JSON = {"vertices": ["1", "2"], "arrows": [{"src": "1", "tgt": "2"}]}


@pytest.fixture
def a2(tmp_path):
    p = tmp_path / "a2.json"
    p.write_text(json.dumps(A2_JSON))
    return str(p)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_euler(a2):
    code, out, _ = run("euler", "--quiver", a2, "--x", "1,0", "--y", "0,1")
    assert code == 0 and out.strip() == "-1"


def test_flag():
    code, out, _ = run("flag", "--r", "2", "--delta", "1,1")
    assert code == 0
    assert out.splitlines()[0].replace(" ", "") == "t+1"
    assert "#P = L^3 - 2*L^2 + L" in out


def test_verify_integration(a2):
    code, out, _ = run("verify", "--suite", "integration", "--quiver", a2, "--q", "2", "--bound", "3")
    assert code == 0
    assert out.strip().endswith("checks pass")
    assert "FAIL" not in out


def test_verify_trivial_assoc_grid():
    code, out, _ = run("verify", "--suite", "assoc", "--bound", "1")
    assert code == 0 and "FAIL" not in out


def test_verify_config(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"suite": "assoc", "quiver": A2_JSON, "bound": 2, "q": 3}))
    code, out, _ = run("verify", "--config", str(cfg))
    assert code == 0 and "q\": 3" in out
    cfg.write_text(json.dumps({"suite": "assoc", "colour": 1}))
    code, _, err = run("verify", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_failing_suite_exits_4(monkeypatch):
    bad = Report("recursion", [CheckEntry("HN partition identity", {"alpha": [1, 1], "q": 2}, 1, 2)])
    monkeypatch.setattr(verify, "run_suite", lambda name, **kw: bad)
    code, out, _ = run("verify", "--suite", "periodic")
    assert code == 4
    assert "FAIL  HN partition identity" in out and '"alpha": [1, 1]' in out


def test_json_is_deterministic(a2):
    for argv in (["hall-product", "--quiver", a2, "--left", '{"q":2,"dim":[0,1],"mats":[[]]}',
                  "--right", '{"q":2,"dim":[1,0],"mats":[[]]}'],
                 ["equivariant", "--r", "3", "--delta", "1,1,1", "--weights", "2,1,0", "--field", "F1"],
                 ["hecke", "--sym", "3", "--young", "2,1"],
                 ["semistable", "--quiver", "a2", "--dim", "1,1", "--theta", "1,0", "--q", "3"]):
        first = run("--json", *argv)
        second = run(*argv[:1], "--json", *argv[1:])
        assert first[0] == 0 and first[1] == second[1]
        json.loads(first[1])


def test_semistable_output():
    code, out, _ = run("--json", "semistable", "--quiver", "a2", "--dim", "1,1", "--theta", "1,0", "--q", "3")
    data = json.loads(out)
    assert data["formatted"] == "1/(L - 1)" and data["value"] == data["bruteforce"] == "1/2"


def test_errors(tmp_path):
    assert run("frobnicate")[0] == 2
    assert run()[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run("euler", "--quiver", str(bad), "--x", "1,0", "--y", "0,1")
    assert code == 2 and "--quiver" in err
    code, _, err = run("euler", "--quiver", "a2", "--x", "1,a", "--y", "0,1")
    assert code == 2 and "--x" in err
    code, _, err = run("euler", "--quiver", str(tmp_path / "missing.json"), "--x", "1", "--y", "1")
    assert code == 2
    code, _, err = run("period-domain", "--r", "2", "--delta", "1,1", "--weights", "0,1")
    assert code == 2 and "weights" in err
    code, _, err = run("enumerate", "--quiver", '{"vertices": ["a"], "arrows": [{"src": "a", "tgt": "a"}]}', "--dim", "1")
    assert code == 2


def test_budget_flag_wins(monkeypatch):
    monkeypatch.setenv("HALL_BUDGET", "10")
    # 81 raw points; tables are cached, so pick one no other test builds first
    assert run("enumerate", "--quiver", "kronecker", "--dim", "1,2", "--q", "3")[0] == 3
    assert run("--budget", "1000000", "enumerate", "--quiver", "kronecker", "--dim", "1,2", "--q", "3")[0] == 0
    monkeypatch.delenv("HALL_BUDGET")
    code, _, err = run("--budget", "10", "enumerate", "--quiver", "kronecker", "--dim", "2,2", "--q", "3")
    assert code == 3 and "budget" in err


def test_other_verbs():
    assert run("enumerate", "--quiver", "a2", "--dim", "1,1", "--q", "2")[0] == 0
    assert run("motivic", "--quiver", "kronecker", "--dim", "1,1", "--q", "3")[0] == 0
    assert run("hn-type", "--quiver", "a2", "--dim", "1,1", "--theta", "1,0")[0] == 0
    code, out, _ = run("hn-filtration", "--quiver", "a2", "--rep", '{"q":2,"dim":[1,1],"mats":[[[0]]]}', "--theta", "1,0")
    assert code == 0 and "[[1, 0], [0, 1]]" in out
    code, out, _ = run("integrate", "--quiver", "a1", "--element", '{"q":2,"dim":[2],"mats":[]}')
    assert code == 0 and "1/6" in out
    code, out, _ = run("period-domain", "--r", "2", "--delta", "1,1", "--weights", "1,0", "--mode", "both", "--q", "2", "--k", "2")
    assert code == 0 and out.startswith("2 ")
    assert run("hecke", "--gl", "2,3", "--borel")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motivic_hall", "flag", "--r", "3", "--delta", "1,2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("t^2 + t + 1")
