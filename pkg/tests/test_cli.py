import json
import subprocess
import sys

import pytest

from lckholonomy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def checks_by_name(payload):
    return {c["name"]: c for c in payload["checks"]}


# -- worked examples -------------------------------------------------------------------------------


def test_heisenberg_holonomy_example(capsys):
    code, out, _ = run(capsys, "check", "--example", "heisenberg", "--n", "3", "--a", "1,2",
                       "--suite", "holonomy")
    assert code == 0
    assert "dim hol^b = 1" in out and "contains_phi = true" in out
    code, out, _ = run(capsys, "check", "--example", "heisenberg", "--n", "3", "--a", "1,2",
                       "--suite", "holonomy", "--json")
    checks = checks_by_name(json.loads(out))
    assert checks["closure dimension"]["detail"] == "dim hol^b = 1"
    assert checks["phi in hol^b"]["status"] == "pass"


def test_hopf_surface_curvature_example(capsys):
    code, out, _ = run(capsys, "check", "--example", "hopf", "--n", "2", "--suite", "curvature-tables", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["status"] == "pass"
    assert any("identically zero" in c["detail"] and c["name"].startswith("R^b = 0") for c in payload["checks"])


def test_ot_operators_example(capsys):
    code, out, _ = run(capsys, "check", "--example", "ot", "--s", "3", "--r", "1,0,2", "--suite", "ot-operators",
                       "--json")
    payload = json.loads(out)
    assert code == 0
    assert all(c["status"] == "pass" for c in payload["checks"])
    names = [c["name"] for c in payload["checks"]]
    assert {"rank U", "rank V", "rank U + V", "T_ij entry table"} <= set(names)
    assert sum(n.startswith("S_") for n in names) == 3


# -- report format -----------------------------------------------------------------------------------


def test_json_schema(capsys):
    code, out, _ = run(capsys, "check", "--example", "inoue", "--suite", "lck", "--json")
    payload = json.loads(out)
    assert list(payload) == ["example", "suite", "checks", "status"]
    assert payload["example"] == "inoue(mu=1, y=1)" and payload["suite"] == "lck"
    for c in payload["checks"]:
        assert list(c) == ["name", "status", "detail", "anchor"]
        assert c["status"] in ("pass", "fail", "skip") and c["anchor"]


def test_reports_are_deterministic(capsys):
    argv = ("check", "--example", "ot", "--s", "2", "--r", "1,1/2", "--json")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_negative_rational_parameter(capsys):
    code, out, _ = run(capsys, "check", "--example", "inoue", "--mu=-1/2", "--y", "0", "--suite", "bismut-tables")
    assert code == 0
    assert "inoue(mu=-1/2, y=0)" in out


def test_all_runs_applicable_suites_only(capsys):
    code, out, _ = run(capsys, "check", "--example", "inoue", "--json")
    suites = {c["name"].split(":")[0] for c in json.loads(out)["checks"]}
    assert code == 0
    assert "hopf-symbolic" not in suites and "ot-operators" not in suites
    assert {"structure", "lck", "holonomy", "gauduchon-scan"} <= suites


# -- export and custom files -------------------------------------------------------------------------


def test_export_then_check_gives_identical_report(capsys, tmp_path):
    path = tmp_path / "inoue.yaml"
    assert run(capsys, "export", "--example", "inoue", "--mu", "2", "--y", "3", "-o", str(path))[0] == 0
    direct = run(capsys, "check", "--example", "inoue", "--mu", "2", "--y", "3", "--json")
    imported = run(capsys, "check", "--file", str(path), "--json")
    assert imported == direct


def test_export_to_stdout(capsys):
    code, out, _ = run(capsys, "export", "--example", "heisenberg", "--n", "2")
    assert code == 0 and out.startswith("dimension: 4\nring: constants\n")


def test_failing_custom_file_exits_one(capsys, tmp_path):
    path = tmp_path / "bad.yaml"
    run(capsys, "export", "--example", "inoue", "-o", str(path))
    text = path.read_text().replace("name: inoue(mu=1, y=1)\n", "")
    text = text.replace("brackets:\n", "brackets:\n- {i: 2, j: 1, k: 2, coeff: '1'}\n", 1)
    path.write_text(text)
    code, out, _ = run(capsys, "check", "--file", str(path), "--suite", "holonomy", "--json")
    payload = json.loads(out)
    assert code == 1 and payload["status"] == "fail"
    assert payload["example"] == "bad"
    assert payload["checks"][-1]["status"] == "skip"  # gated by the structure suite


# -- input errors --------------------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["check", "--example", "klein"],
    ["check", "--example", "inoue", "--suite", "everything"],
    ["check", "--example", "inoue", "--suite", "hopf-symbolic"],
    ["check", "--example", "heisenberg", "--a", "1,x"],
    ["check", "--example", "heisenberg", "--n", "3", "--a", "1"],
    ["check", "--example", "inoue", "--mu", "0"],
    ["check"],
    ["check", "--example", "inoue", "--file", "x.yaml"],
    ["check", "--file", "/nonexistent/frame.yaml"],
    ["export"],
    [],
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_error_reports_position(capsys, tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("dimension: 4\nring: constants\nbrackets:\n  - {i: 1, j: 2, k: 2, coeff: \"1 +\"}\n"
                    "metric: []\nJ: []\n")
    code, _, err = run(capsys, "check", "--file", str(path))
    assert code == 2
    assert "line 4, column" in err


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_console_script_and_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "lckholonomy", "check", "--example", "abelian", "--suite",
                           "structure"], capture_output=True, text=True)
    assert done.returncode == 0 and "status: PASS" in done.stdout
