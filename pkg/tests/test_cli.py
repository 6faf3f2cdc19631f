import json
import subprocess
import sys

import pytest

from teamlogic.cli import run
from teamlogic.hilbert import dump_derivation, shipped_derivations

TWO = json.dumps({"worlds": 2, "rel": [], "val": {"p": [0]}})
EXCLUDED_MIDDLE_FAILS = "~~(p \\/ ~p) -> (p \\/ ~p)"


def test_eval_example(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(TWO)
    code, out, _ = run(["eval", "--model", str(path), "--team", "0,1",
                        "--formula", "p | ~p", "--fragment", "md"])
    assert code == 0 and out == "satisfied\n"
    code, _, _ = run(["eval", "--model", TWO, "--team", "0,1", "--formula", "=(p)"])
    assert code == 1


def test_empty_team_literal():
    code, _, _ = run(["eval", "--model", TWO, "--team", "", "--formula", "bot"])
    assert code == 0


def test_decide_counter_pipes_back_into_eval():
    code, out, _ = run(["decide", "valid", "--fragment", "mt0", "--formula", EXCLUDED_MIDDLE_FAILS])
    assert code == 1
    verdict, doc = out.splitlines()
    assert verdict == "Falsifiable"
    code, out, _ = run(["eval", "--model", "-", "--formula", EXCLUDED_MIDDLE_FAILS], doc.encode())
    assert code == 1 and out == "not satisfied\n"


def test_decide_entails_counter_reverifies():
    code, out, _ = run(["decide", "entails", "--premise", "=(p,q)", "--conclusion", "=(q,p)",
                        "--fragment", "md", "--json"])
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] == "NotEntailed"
    counter = json.dumps({"model": doc["model"], "team": doc["team"]}).encode()
    assert run(["eval", "--model", "-", "--formula", "=(p,q)"], counter)[0] == 0
    assert run(["eval", "--model", "-", "--formula", "=(q,p)"], counter)[0] == 1


def test_dnf_example():
    code, out, _ = run(["dnf", "--fragment", "mt0", "--formula", "=(p,q)"])
    assert code == 0 and len(out.splitlines()) == 4


def test_verdicts_and_json():
    assert run(["decide", "valid", "--formula", "~~p -> p"])[0] == 0
    assert run(["flat", "--formula", "p \\/ ~p", "--fragment", "mid"])[0] == 1
    code, out, _ = run(["flat", "--formula", "~p & <>q", "--json"])
    assert code == 0 and json.loads(out)["flat"] is True
    assert run(["oracle", "flat", "--formula", "=(p)", "--max-worlds", "2"])[0] == 1
    assert run(["parse", "--formula", "p | q", "--fragment", "mid"])[0] == 1
    assert run(["translate", "--formula", "[]p"]) == (0, "∀y(¬xRy ⊗ Py)\n", "")


def test_powerset_commands():
    code, out, _ = run(["powerset", "conditions", "--model", TWO])
    assert code == 0 and out.startswith("F1: holds")
    code, out, _ = run(["powerset", "build", "--model", TWO, "--full", "--json"])
    assert code == 0 and json.loads(out)["model"]["points"] == 4
    assert run(["powerset", "endpointmap", "--model", TWO])[0] == 0


def test_proof_check(tmp_path):
    d = shipped_derivations()["hmt0_e_forward"]
    code, out, _ = run(["proof", "check", "--file", json.dumps(dump_derivation(d))])
    assert code == 0 and out == "accepted\n"
    bad = {"system": "HMT0", "premises": ["p"],
           "lines": [{"f": "p", "by": {"premise": 1}}, {"f": "[]p", "by": {"nec": 1}}]}
    code, out, _ = run(["proof", "check", "--file", json.dumps(bad), "--json"])
    assert code == 1 and json.loads(out)["line"] == 2


@pytest.mark.parametrize("argv", [
    [],
    ["eval", "--model", "{bad", "--formula", "p"],
    ["eval", "--model", TWO, "--formula", "p ->"],
    ["eval", "--model", TWO, "--team", "7", "--formula", "p"],
    ["decide", "valid", "--formula", "p | q", "--fragment", "mid"],
    ["nonsense"],
])
def test_malformed_input_exits_2(argv):
    code, _, err = run(argv)
    assert code == 2 and err


def test_batch_mode():
    queries = b"decide valid --formula '~~p -> p'\n# comment\n\ndnf --formula '=(p)'\neval --formula\n"
    code, out, _ = run(["batch"], queries)
    docs = [json.loads(line) for line in out.splitlines()]
    assert [d["code"] for d in docs] == [0, 0, 2] and code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "teamlogic", "decide", "valid", "--formula", "p | ~p",
                           "--fragment", "md"], capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and proc.stdout.strip() == "Valid"
