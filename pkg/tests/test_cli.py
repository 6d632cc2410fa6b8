import json
import subprocess
import sys
from pathlib import Path

import pytest

from logbundle.arrangement import parse_arrangement
from logbundle.cli import EXIT_BUDGET, EXIT_OK, EXIT_SCHEMA, EXIT_USAGE, EXIT_VALIDATION, main, run_command

from conftest import data_path

GOLDEN = Path(__file__).parent / "golden"
LINE_CONIC = str(GOLDEN / "line_conic_input.json")
TWO_LINES_CONIC = str(GOLDEN / "two_lines_conic_input.json")


def _doc(field, *comps):
    return {"field": field, "components": [{"degree": d, "terms": t} for d, t in comps]}


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(path)


def _run(*argv):
    report, code = run_command([*argv, "--no-timing"])
    return report.to_dict(), code


def _arr_file(tmp_path, texts, field="Q"):
    from logbundle.arrangement import arrangement_from_strings
    from logbundle.exactalg import field_from_descriptor

    arr = arrangement_from_strings(field_from_descriptor(field), texts, validate=False)
    return _write(tmp_path, "arr.json", arr.to_json())


# -- golden outputs ------------------------------------------------------------


def test_pole_golden():
    report, code = run_command(["pole", "-i", LINE_CONIC, "--no-timing"])
    assert code == EXIT_OK
    assert report.to_json() + "\n" == (GOLDEN / "pole_line_conic.json").read_text(encoding="utf-8")


def test_porteous_golden():
    report, code = run_command(["porteous", "--setting", "lines", "--no-timing"])
    assert code == EXIT_OK
    assert report.to_json() + "\n" == (GOLDEN / "porteous_lines.json").read_text(encoding="utf-8")


def test_porteous_conics():
    out, code = _run("porteous", "--setting", "conics")
    assert code == EXIT_OK and out["result"]["count"] == 21


def test_unstable_lines_example2():
    out, code = _run("unstable-lines", "-i", data_path("example2.json"), "--tol", "1e-8")
    assert code == EXIT_OK
    res = out["result"]
    assert (res["degree"], res["real"], len(res["lines"])) == (21, 11, 21)
    assert res["conjugate_symmetric"] is True
    assert all(float(s["residual"]) < 1e-8 for s in res["lines"])


def test_report_is_deterministic():
    a = run_command(["pair", "-i", TWO_LINES_CONIC, "--no-timing"])[0].to_json()
    b = run_command(["pair", "-i", TWO_LINES_CONIC, "--no-timing"])[0].to_json()
    assert a == b


def test_pair_payload():
    out, code = _run("pair", "-i", TWO_LINES_CONIC)
    assert code == EXIT_OK
    res = out["result"]
    assert res["jumping_line"] == ["0", "0", "1"]
    assert res["discriminant"] == "-3"


# -- per-command smoke ---------------------------------------------------------


def test_validate_round_trip(tmp_path, example2):
    out, code = _run("validate", "-i", data_path("example2.json"))
    assert code == EXIT_OK
    again = parse_arrangement(out["result"]["arrangement"])
    assert again == example2 and again.to_json() == example2.to_json()
    assert out["input_digest"] == _run("validate", "-i", _write(tmp_path, "e.json", example2.to_json()))[0]["input_digest"]


def test_resolve_and_classify():
    out, code = _run("resolve", "-i", LINE_CONIC)
    assert code == EXIT_OK
    out2, _ = _run("resolve", "-i", LINE_CONIC, "--method", "gauss")
    # presentations agree up to a change of basis
    assert out["result"]["omega_resolution"]["betti"] == out2["result"]["omega_resolution"]["betti"]
    cls, _ = _run("classify", "-i", LINE_CONIC)
    assert cls["result"]["label"] == "Mss(0,1)"


def test_chern_normalized(tmp_path):
    path = _arr_file(tmp_path, ["x0", "x1", "x0^2 + x1^2 + x2^2"])
    out, code = _run("chern", "-i", path)
    assert code == EXIT_OK
    assert (out["result"]["c1"], out["result"]["c2"], out["result"]["normalized"]) == (1, 2, [-1, 2])


def test_cubic(tmp_path):
    path = _arr_file(tmp_path, ["x0", "x1", "x2", "x0^2 + x1^2 + x2^2 + x0*x1"])
    out, code = _run("cubic", "-i", path)
    assert code == EXIT_OK
    res = out["result"]
    assert res["rank_H"] <= 8
    assert all(r["residuals_zero"] and r["hermite"] for r in res["reconstructions"])


def test_unstable_test_example1():
    out, code = _run("unstable-test", "-i", data_path("example1.json"))
    assert code == EXIT_OK and out["result"]["all_unstable"]
    assert len(out["result"]["tests"]) == 4


def test_oracle_random():
    out, code = _run("oracle", "--field", "F_5", "--seed", "3")
    assert code == EXIT_OK and out["result"]["agree"] is True


def test_reduce(tmp_path):
    path = _arr_file(tmp_path, ["x0", "x1", "x2", "x0^2 + x1^2 + x2^2 + x0*x1"])
    out, code = _run("reduce", "-i", path, "--drop", "3")
    assert code == EXIT_OK and out["result"]["agree"] is True


def test_plot_writes_svg(tmp_path):
    svg = tmp_path / "lc.svg"
    out, code = _run("plot", "-i", LINE_CONIC, "--svg", str(svg))
    assert code == EXIT_OK
    assert svg.read_text(encoding="utf-8").startswith("<svg")


def test_timing_field():
    report, _ = run_command(["porteous"])
    assert "timing_s" in report.to_dict()
    assert "timing_s" not in _run("porteous")[0]


def test_env_default_tolerance(monkeypatch):
    monkeypatch.setenv("LOGBUNDLE_TOL", "1e-6")
    assert _run("porteous")[0]["config"]["tol"] == "1e-06"
    monkeypatch.setenv("LOGBUNDLE_TOL", "abc")
    assert _run("porteous")[1] == EXIT_USAGE


# -- exit codes ------------------------------------------------------------------


def test_exit_validation_with_report(tmp_path):
    path = _arr_file(tmp_path, ["x0", "x1", "x0 + x1"])
    out, code = _run("validate", "-i", path)
    assert code == EXIT_VALIDATION
    assert out["result"]["normal_crossings"]["ok"] is False
    out, code = _run("resolve", "-i", path)
    assert code == EXIT_VALIDATION
    assert out["error"]["type"] == "NormalCrossingsViolation" and "report" in out["error"]


def test_exit_singular_component(tmp_path):
    path = _write(tmp_path, "s.json", _doc("Q", (2, [[[2, 0, 0], "1"], [[0, 2, 0], "-1"]])))
    assert _run("validate", "-i", path)[1] == EXIT_VALIDATION


@pytest.mark.parametrize("text", ["{nope", "[]", json.dumps({"field": "Q"})])
def test_exit_schema(tmp_path, text):
    out, code = _run("validate", "-i", _write(tmp_path, "bad.json", text))
    assert code == EXIT_SCHEMA and out["status"] == "schema error"


@pytest.mark.parametrize(
    "argv",
    [["bogus"], ["validate"], ["validate", "-i", "/nonexistent/file.json"], ["porteous", "--tol", "-1"], [],
     ["porteous", "--setting", "planes"]],
)
def test_exit_usage(argv):
    report, code = run_command(argv)
    assert code == EXIT_USAGE and report.status == "usage error"


def test_exit_budget():
    out, code = _run("unstable-lines", "-i", data_path("example2.json"), "--budget-spairs", "5")
    assert code == EXIT_BUDGET and out["status"] == "budget exhausted"
    out, code = _run("oracle", "--field", "F_11", "--candidates", "conics", "--oracle-max-candidates", "100")
    assert code == EXIT_BUDGET


def test_exit_non_real_plot(tmp_path):
    out, code = _run("plot", "-i", data_path("example1.json"), "--svg", str(tmp_path / "x.svg"))
    assert code == EXIT_VALIDATION and out["error"]["type"] == "NonRealField"


def test_exit_positive_dimensional(tmp_path):
    path = _arr_file(tmp_path, ["x0", "x1", "x0^2 + x1^2 + x2^2"])
    out, code = _run("unstable-lines", "-i", path)
    assert code == EXIT_VALIDATION and out["error"]["type"] == "PositiveDimensionalLocus"


def test_main_prints_json(capsys):
    assert main(["porteous", "--no-timing"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["result"]["count"] == 21
    assert main(["nope"]) == EXIT_USAGE
    assert "logbundle:" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "logbundle", "porteous", "--no-timing"], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == json.loads((GOLDEN / "porteous_lines.json").read_text(encoding="utf-8"))
    proc = subprocess.run([sys.executable, "-m", "logbundle", "validate", "-i", "/nonexistent.json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 64
