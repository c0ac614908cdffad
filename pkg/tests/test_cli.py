import io
import json

import pytest

from polymoment import __version__
from polymoment import cli
from polymoment.corpus import load_entry
from polymoment.errors import TrackingBreakdown
from polymoment.problem import problem_to_data

SUBCOMMANDS = ["moments", "kernel", "decompose", "crd", "condition", "monodromy", "omega", "puiseux", "trace"]


@pytest.fixture
def problem(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(problem_to_data(load_entry(name).instance)))
        return str(path)
    return write


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_subcommands_succeed(cmd, problem, capsys):
    code, out, _ = run([cmd, problem("chebyshev_t6_t2")], capsys)
    assert code == 0
    env = json.loads(out)
    assert env["tool"] == {"name": "polymoment", "version": __version__}
    assert env["exit_code"] == 0
    assert env["problem"]["P"] == ["-1", "0", "18", "0", "-48", "0", "32"]
    assert "result" in env and "config" in env


def test_verdict_theorem2(problem, capsys):
    code, out, _ = run(["verdict", "--theorem", "2", problem("chebyshev_t6_t2_plus_t3")], capsys)
    res = json.loads(out)["result"]
    assert code == 0
    assert res["kind"] == "DoesNotVanish" and res["witness"] == {"i": 1, "j": 1}
    assert res["diagnostics"]["red_flags"] == []


def test_verdict_theorem1_on_decomposable_is_invalid(problem, capsys):
    code, _, err = run(["verdict", "--theorem", "1", problem("chebyshev_t6_t2")], capsys)
    assert code == 3 and "indecomposable" in err


def test_inconclusive_exit_code(problem, capsys):
    code, out, _ = run(["verdict", "--theorem", "2", "--max-i", "0", "--no-monodromy",
                        problem("chebyshev_t6_t2_plus_t3")], capsys)
    assert code == 2
    assert json.loads(out)["result"]["kind"] == "Inconclusive"


def test_malformed_json_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"P": [1, 2,, 3]}')
    code, out, err = run(["moments", str(path)], capsys)
    assert code == 3 and out == ""
    assert "line 1, column 13" in err


def test_missing_file_exit_code(tmp_path, capsys):
    code, _, _ = run(["moments", str(tmp_path / "nope.json")], capsys)
    assert code == 3


def test_numeric_failure_exit_code(problem, capsys, monkeypatch):
    import polymoment.monodromy as mono

    def boom(*args, **kwargs):
        raise TrackingBreakdown("step size underflow")
    monkeypatch.setattr(mono, "monodromy_group", boom)
    code, _, err = run(["monodromy", problem("square_q_z")], capsys)
    assert code == 4 and "numeric failure" in err


def test_stdin_and_out_file(problem, tmp_path, capsys, monkeypatch):
    text = open(problem("square_q_z")).read()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    out_path = tmp_path / "report.json"
    code, out, _ = run(["moments", "-", "--max-i", "3", "--out", str(out_path)], capsys)
    assert code == 0 and out == ""
    env = json.loads(out_path.read_text())
    assert [m["value"] for m in env["result"]["single"]] == ["0", "0", "0", "0"]
    assert env["config"]["max_i"] == 3


def test_reports_are_byte_identical(problem, capsys):
    path = problem("chebyshev_t6_t2_plus_t3")
    _, first, _ = run(["omega", path], capsys)
    _, second, _ = run(["omega", path], capsys)
    assert first == second


def test_omega_report(problem, capsys):
    _, out, _ = run(["omega", problem("chebyshev_t6_t2_plus_t3")], capsys)
    omega = json.loads(out)["result"]["omega"]
    assert omega["k"] == 2
    assert omega["rho1"] == "(0 1)(2 5)(3 4)" and omega["rho2"] == "(1 5)(2 4)"


def test_puiseux_normalizes(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"P": ["2", "0", "2"], "q": ["1"], "a": "-1", "b": "1"}))
    code, out, _ = run(["puiseux", str(path), "--terms", "4"], capsys)
    res = json.loads(out)["result"]
    assert code == 0
    assert res["normalized_P"] == ["1", "0", "1"]
    assert [c["value"] for c in res["coefficients"]] == ["1", "0", "-1/2", "0"]


def test_kernel_report(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"P": ["0", "0", "1"], "q": ["1"], "a": "-1", "b": "1"}))
    code, out, _ = run(["kernel", str(path), "--degree-bound", "3"], capsys)
    res = json.loads(out)["result"]
    assert code == 0
    assert res["dimension"] == 2 and res["stabilized"]


def test_corpus_run_without_monodromy(capsys):
    code, out, _ = run(["corpus", "run", "--random-count", "2", "--no-monodromy"], capsys)
    res = json.loads(out)["result"]
    assert code == 0
    assert res["summary"]["instances"] == res["summary"]["definitive"] == 20
    assert all(r["matches_expected"] for r in res["results"] if "expected" in r)


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out
