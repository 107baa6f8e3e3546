import io
import json
import subprocess
import sys

import pytest

from teamlogic.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


@pytest.fixture
def two_valuations(tmp_path):
    path = tmp_path / "team.json"
    path.write_text(json.dumps({"vars": ["p"], "team": ["0", "1"]}))
    return str(path)


def test_eval(two_valuations):
    code, report = call_json("eval", "--team", two_valuations, "--formula", "p \\/ ~p")
    assert code == 1 and report["verdict"] is False and report["schema"] == 1
    code, _ = call("eval", "--team", two_valuations, "--formula", "p | ~p")
    assert code == 0


def test_extension_and_entails():
    code, report = call_json("extension", "--formula", "=(p)")
    assert code == 0 and report["count"] == 3
    code, report = call_json("entails", "--premise", "p \\/ ~p", "--conclusion", "p")
    assert code == 1 and report["countermodel"] == ["0"]
    code, _ = call("entails", "--premise", "p & q", "--conclusion", "p \\/ q")
    assert code == 0
    code, report = call_json("extension", "--formula", "p", "--vars", "p,q")
    assert report["property"]["vars"] == ["p", "q"]


def test_nf():
    code, text = call("nf", "--dnf", "~(p \\/ ~p)")
    assert code == 0 and text.strip() == "~p & ~~p"
    code, report = call_json("nf", "--harrop", "~(p \\/ q) | r")
    assert report["result"] == "~(p | q) | r"
    code, _ = call("nf", "--harrop", "p \\/ q")
    assert code == 2


def test_classify_and_synth():
    prop = json.dumps({"vars": ["p"], "teams": [[], ["0"], ["1"]]})
    code, report = call_json("classify-property", "--property", prop)
    assert code == 0 and report["closure"]["downward"]["holds"] and not report["closure"]["union"]["holds"]
    code, report = call_json("synth", "--fragment", "PLdep", "--property", prop)
    assert code == 0 and report["verified"] and "PLdep" in report["fragments"]
    bad = json.dumps({"vars": ["p"], "teams": [[], ["0", "1"]]})
    code, report = call_json("synth", "--fragment", "PLv", "--property", bad)
    assert code == 1 and report["witness"] == [["0", "1"], ["1"]]
    code, _ = call("synth", "--fragment", "PLfull", "--property", prop)
    assert code == 2


def test_prove_and_check(tmp_path):
    out = tmp_path / "proof.json"
    code, _ = call("prove", "--premise", "p | q", "--premise", "~p", "--conclusion", "q", "--out", str(out))
    assert code == 0 and json.loads(out.read_text())["schema"] == 1
    code, report = call_json("check-proof", str(out))
    assert code == 0 and report["conclusion"] == "q"
    code, report = call_json("prove", "--premise", "p \\/ ~p", "--conclusion", "p")
    assert code == 1 and report["countermodel"] == ["0"]


def test_check_proof_flags(tmp_path):
    goal = "~(p \\/ q) | r"
    proof = {"schema": 1, "proof": {"rule": "LOrE", "conclusion": goal, "discharged": ["x", "y"], "premises": [
        {"rule": "Hypothesis", "conclusion": "p | q", "label": "m"},
        {"rule": "Hypothesis", "conclusion": goal, "label": "g"},
        {"rule": "Hypothesis", "conclusion": goal, "label": "g"}]}}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(proof))
    code, report = call_json("check-proof", str(path))
    assert code == 1 and "classical" in report["error"]
    code, _ = call("check-proof", str(path), "--harrop-side-condition")
    assert code == 0


def test_verify_lemmas():
    code, report = call_json("verify-lemmas", "--n", "2", "--lemma", "6")
    assert code == 0 and report["passed"] and report["results"][0]["cases"] == 240
    code, report = call_json("verify-lemmas", "--n", "2", "--lemma", "5,6", "--mutation", "sigma-complement")
    assert code == 1 and report["results"][0]["counterexample"] is not None


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["eval", "--team", "/nonexistent.json", "--formula", "p"],
    ["eval", "--team", "{not json", "--formula", "p"],
    ["eval", "--team", '{"vars":["p"],"team":["0"]}', "--formula", "p &"],
    ["eval", "--team", '{"vars":["p"],"team":["0"]}', "--formula", "q"],
    ["extension", "--formula", "p1 & p2 & p3 & p4 & p5"],
    ["verify-lemmas", "--n", "7"],
    ["verify-lemmas", "--lemma", "99"],
    ["check-proof", '{"proof": {"rule": "Magic", "conclusion": "p"}}'],
])
def test_input_errors_exit_2(argv):
    code, _ = call(*argv)
    assert code == 2


def test_module_entry_point(two_valuations):
    proc = subprocess.run([sys.executable, "-m", "teamlogic", "eval", "--team", two_valuations, "--formula", "p"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout.startswith("false")
