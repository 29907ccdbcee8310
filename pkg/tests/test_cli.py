import io
import json

import pytest

from talg.cli import main, run_command
from talg.fileio import loads_algebra
from talg.report import EXIT_ERROR, EXIT_FAIL, EXIT_PASS

from conftest import DATA


def run(*argv):
    out = io.StringIO()
    code = run_command([str(a) for a in argv], out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_check_z3dim2_strong_fails():
    code, rep = run_json("check", DATA / "z3dim2.json", "--kind", "strong")
    assert code == EXIT_FAIL and rep["verdict"] == "fail"
    (det,) = rep["details"]
    cx = det["counterexample"]
    assert cx["tuple"] == [0, 0, 0, 0, 1]
    assert cx["residual"] == ["0", "-1"]
    assert cx["identity"].startswith("strong")


def test_derivations_metric2():
    code, rep = run_json("derivations", DATA / "metric2.json")
    assert code == EXIT_PASS and rep["verdict"] == "pass"
    assert rep["derived"]["dimension"] == 1
    assert len(rep["derived"]["basis"]) == 1


def test_omega1_full_suite():
    code, rep = run_json("omega1", DATA / "matrix_trivial2.json", "--verify-axioms", "--verify-leibniz")
    assert code == EXIT_PASS and rep["verdict"] == "pass"
    names = [d["check"] for d in rep["details"]]
    assert {"lmod", "rmod", "cmod", "lcmod", "rcmod", "lrmod"} <= set(names)
    assert all(d["verdict"] == "pass" for d in rep["details"])


def test_omega1_rejects_non_strong():
    code, rep = run_json("omega1", DATA / "metric2.json")
    assert code == EXIT_FAIL
    assert rep["verdict"] == "fail"


def test_check_default_kind_is_declared():
    code, rep = run_json("check", DATA / "metric2.json")
    assert code == EXIT_PASS and rep["details"][0]["check"] == "B"


@pytest.mark.parametrize("argv, code", [
    (("star-check", DATA / "matrix_trivial2.json"), EXIT_PASS),
    (("envelope", DATA / "matrix_trivial2.json"), EXIT_PASS),
    (("envelope", DATA / "z3dim2.json"), EXIT_FAIL),
    (("trimodule-check", DATA / "matrix_trivial2_self.tmod.json"), EXIT_PASS),
])
def test_other_commands(argv, code):
    got, rep = run_json(*argv)
    assert got == code
    assert rep["command"] == argv[0]


def test_envelope_derived_data():
    _, rep = run_json("envelope", DATA / "matrix_trivial2.json")
    der = rep["derived"]
    assert der["a0_dimension"] == 4 and len(der["representatives"]) == 4
    assert set(der["tables"]) == {"odd_odd", "even_odd", "odd_even", "even_even"}


def test_report_schema():
    for argv in (("check", DATA / "z3dim2.json"), ("derivations", DATA / "metric2.json")):
        _, rep = run_json(*argv)
        assert set(rep) <= {"command", "verdict", "details", "derived", "error"}
        assert rep["verdict"] in ("pass", "fail", "error")
        for d in rep["details"]:
            assert {"check", "verdict"} <= set(d)
            if d["verdict"] == "fail" and "counterexample" in d:
                assert set(d["counterexample"]) == {"identity", "arguments", "tuple", "residual"}
        if rep["verdict"] == "fail":
            assert any(d["verdict"] == "fail" for d in rep["details"])


def test_text_format():
    code, text = run("--format", "text", "check", DATA / "z3dim2.json", "--kind", "strong")
    assert code == EXIT_FAIL
    assert text.startswith("check: FAIL")
    code, text = run("check", DATA / "metric2.json", "--format", "text")
    assert code == EXIT_PASS and text.startswith("check: PASS")


def test_catalog_list_and_export():
    code, rep = run_json("catalog", "list")
    assert code == EXIT_PASS
    assert "z3dim2" in rep["derived"]["entries"]
    code, text = run("catalog", "export", "matrix_trivial", "n=2")
    assert code == EXIT_PASS
    assert text == (DATA / "matrix_trivial2.json").read_text()
    code, text = run("catalog", "export", "metric", "dimension=3", "metric=diag(1,1,-1)")
    assert code == EXIT_PASS and loads_algebra(text).dim == 3


@pytest.mark.parametrize("argv", [
    (),
    ("frobnicate",),
    ("check",),
    ("check", DATA / "z3dim2.json", "--kind", "sideways"),
    ("check", "/nonexistent/file.json"),
    ("catalog", "export"),
    ("catalog", "export", "octonions"),
    ("catalog", "export", "metric", "dimension"),
])
def test_input_errors_exit_2(argv):
    code, rep = run_json(*argv)
    assert code == EXIT_ERROR
    assert rep["verdict"] == "error" and rep["error"]


def test_malformed_file_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "field_order": 1,\n  "dimension": 1,\n  "structure_constants": [\n'
                 '    {"n": 0, "i": 0, "j": 0, "k": 3, "value": "1"}\n  ]\n}\n')
    code, rep = run_json("check", p)
    assert code == EXIT_ERROR and "line 5" in rep["error"]


def test_main_entry(capsys):
    assert main(["check", str(DATA / "one_dim.json")]) == EXIT_PASS
    assert json.loads(capsys.readouterr().out)["verdict"] == "pass"
