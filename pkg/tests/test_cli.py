import json
import subprocess
import sys

import pytest

from rmlogic.cli import Status, dispatch, main, report
from rmlogic.model import RMModel, fixture_a, load_model

from conftest import FIXTURES

A = str(FIXTURES / "fixtureA.json")
B = str(FIXTURES / "fixtureB.json")


def run(argv):
    result, fmt = dispatch(argv)
    return result.status, report(result, fmt)


def run_json(argv):
    status, out = run(argv)
    return status, json.loads(out)


def test_check_example():
    status, out = run(["check", "--model", A, "--world", "t", "--formula", "And[q, ~q]"])
    assert status == Status.Ok and out == b'{"holds":true}\n'
    status, out = run(["check", "--model", A, "--world", "t", "--formula", "And[p, ~p]"])
    assert status == Status.FailedCheck and out == b'{"holds":false}\n'


def test_frame_example():
    assert run_json(["frame", "--model", A, "--system", "RM"]) == (
        Status.Ok, {"passed": True, "violations": []})


def test_frame_violation_text(tmp_path):
    bad = RMModel(("t", "s"), set(), {"t": "t", "s": "s"}, "t", {})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad.to_json()))
    status, out = run(["frame", "--model", str(path), "--system", "B", "--format", "text"])
    assert status == Status.FailedCheck
    lines = out.decode().splitlines()
    assert lines[0] == "VIOLATION b1: witness x=t"
    assert all(line.startswith("VIOLATION ") for line in lines)


def test_bisim_pair_example():
    status, doc = run_json(["bisim", "--left", A, "--right", A, "--pair", "t:s"])
    assert status == Status.FailedCheck
    assert doc["related"] is False and doc["distinguishing"] == "q"
    assert doc["drop"]["stage"] == 0 and doc["drop"]["kind"] == "atom"


def test_bisim_related_and_trace(tmp_path):
    trace = tmp_path / "trace.json"
    status, doc = run_json(["bisim", "--left", A, "--right", A, "--pair", "t:t", "--trace", str(trace)])
    assert status == Status.Ok and doc["related"] is True
    t = json.loads(trace.read_text())
    assert t["alpha"] == doc["alpha"] and len(t["stages"]) == doc["alpha"] + 1


def test_bisim_props_restriction():
    _, full = run_json(["bisim", "--left", A, "--right", A])
    _, only_p = run_json(["bisim", "--left", A, "--right", A, "--props", "p"])
    assert only_p["props"] == ["p"] and full["props"] == ["p", "q"]
    assert set(map(tuple, full["Z1"])) <= set(map(tuple, only_p["Z1"]))


def test_distinguish():
    status, doc = run_json(["distinguish", "--left", A, "--left-world", "t",
                            "--right", A, "--right-world", "s"])
    assert status == Status.Ok
    assert doc == {"distinguishable": True, "formula": "q", "degree": 0, "stage": 0}
    status, doc = run_json(["distinguish", "--left", A, "--left-world", "t",
                            "--right", A, "--right-world", "t"])
    assert status == Status.FailedCheck and doc == {"distinguishable": False}


def test_charform():
    status, doc = run_json(["charform", "--model", A, "--world", "t", "--target", A,
                            "--stage", "0", "--emit"])
    assert status == Status.Ok
    assert doc["formula"] == "And[p, q, ~q]" and doc["degree"] == 0
    status, doc = run_json(["charform", "--model", A, "--world", "t", "--target", A])
    assert status == Status.Ok
    assert doc["stage"] == doc["stabilization_stage"]
    assert doc["target_satisfying"] == ["t"]


def test_charform_size_guard():
    status, doc = run_json(["charform", "--model", A, "--world", "t", "--target", A,
                            "--stage", "3", "--emit", "--max-size", "10"])
    assert status == Status.UserError and "--max-size" in doc["error"]


def test_translate():
    assert run_json(["translate", "--formula", "(p -> q)"]) == (
        Status.Ok, {"fo": "forall y0 z0. (R(x,y0,z0) & P(y0)) => Q(z0)"})
    _, doc = run_json(["translate", "--formula", "p", "--var", "w"])
    assert doc["fo"] == "P(w)"


def test_gen_out_round_trips(tmp_path):
    out = tmp_path / "m.json"
    argv = ["gen", "--worlds", "3", "--props", "2", "--system", "RM", "--seed", "5"]
    status, doc = run_json(argv + ["--out", str(out)])
    assert status == Status.Ok and doc["out"] == str(out)
    m = load_model(out)
    _, printed = run_json(argv)
    assert RMModel.from_json(printed) == m
    assert run_json(["frame", "--model", str(out), "--system", "RM"])[0] == Status.Ok


@pytest.mark.parametrize("argv", [
    ["check", "--model", A, "--world", "t", "--formula", "(p q)"],
    ["check", "--model", "/nonexistent.json", "--world", "t", "--formula", "p"],
    ["check", "--model", A, "--world", "u", "--formula", "p"],
    ["check", "--model", A, "--world", "t", "--formula", "z"],
    ["frame", "--model", A, "--system", "S4"],
    ["bisim", "--left", A, "--right", A, "--pair", "ts"],
    ["bisim", "--left", A, "--right", A, "--props", "z"],
    ["charform", "--model", A, "--world", "t", "--target", B, "--stage", "-1"],
    ["nosuch"],
    [],
])
def test_user_errors(argv):
    status, doc = run_json(argv)
    assert status == Status.UserError and doc["error"]


def test_parse_diagnostic_is_embedded():
    _, doc = run_json(["check", "--model", A, "--world", "t", "--formula", "(p q)"])
    assert "line 1" in doc["error"] and "'->'" in doc["error"]


def test_not_b_model_is_user_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(RMModel(("t",), set(), {"t": "t"}, "t", {"p": set()}).to_json()))
    status, doc = run_json(["charform", "--model", str(bad), "--world", "t", "--target", B])
    assert status == Status.UserError and doc["kind"] == "NotBModel"


def test_internal_error(monkeypatch):
    import rmlogic.cli as cli

    def boom(a):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.COMMANDS, "translate", boom)
    status, doc = run_json(["translate", "--formula", "p"])
    assert status == Status.InternalError and doc["kind"] == "RuntimeError"


def test_text_mode_carries_same_facts():
    _, out = run(["distinguish", "--left", A, "--left-world", "t", "--right", A,
                  "--right-world", "s", "--format", "text"])
    assert out.decode().splitlines() == ["degree: 0", "distinguishable: true", "formula: q", "stage: 0"]


def test_main_exit_code(capsysbinary):
    assert main(["check", "--model", A, "--world", "s", "--formula", "q"]) == 1
    assert capsysbinary.readouterr().out == b'{"holds":false}\n'


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "rmlogic", "gen", "--worlds", "3", "--props", "2",
            "--system", "B", "--seed", "11"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["worlds"] == ["w0", "w1", "w2"]


def test_fixture_file_matches_model():
    assert load_model(A) == fixture_a()
