import io
import json
import subprocess
import sys

import pytest

from pellkit import cli
from pellkit.errors import TheoremViolation


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--format", "json", *argv)
    assert code == 0, text
    return json.loads(text)


def test_solve():
    assert run_json("solve", "61") == {"d": "61", "x": "29718", "y": "3805", "norm": "-1"}
    assert run_json("solve", "5", "--plus")["x"] == "9"


def test_subcommand_level_format_flag():
    code, text = run("solve", "6", "--format", "json")
    assert code == 0 and json.loads(text)["y"] == "2"


def test_cf_and_unit():
    assert run_json("cf", "6")["period"] == ["2", "4"]
    data = run_json("unit", "17", "--at", "8")
    assert (data["T"], data["U"], data["symbol"]) == ("8", "2", "-1")


def test_descent_and_selmer():
    rows = run_json("descent", "6")
    assert len(rows) == 8
    assert sum(r["status"].startswith("solvable") for r in rows) == 4
    sel = run_json("selmer", "6")
    assert sel["solvable_classes"] == ["1", "3"] and sel["equation"] == "3r^2 - 2s^2 = 1"


def test_redei_splittings_graph():
    assert run_json("redei", "205")["e4"] == "1"
    assert len(run_json("splittings", "205")) == 2
    assert run_json("graph", "1105", "--check", "odd") == {"odd": True, "negative_pell": True}
    assert run_json("graph", "5945", "--check", "odd") == {"odd": False, "negative_pell": False}
    code, text = run("graph", "1105", "--emit", "edges")
    assert code == 0 and text.splitlines()[1:] == ["5 13", "5 17"]
    code, text = run("graph", "1105", "--emit", "dot")
    assert text.startswith("graph gamma {")


def test_classgroup():
    data = run_json("classgroup", "205")
    assert (data["h_plus"], data["h"], data["e4"]) == ("4", "2", "1")
    assert run_json("classgroup", "-84")["h"] == "4"


def test_criteria_command():
    rec = run_json("criteria", "tano", "5", "13", "17")
    assert rec["applicable"] is True and rec["agrees"] is True
    rec = run_json("criteria", "richaud", "5", "13", "--clause", "R1b")
    assert rec["inputs"]["d"] == "130"
    assert run_json("criteria", "scholz", "5", "41")["prediction"] == "2i"


def test_density_command_formats():
    data = run_json("density", "--max", "2000", "--chunk", "500")
    assert data["alpha_ref"] == "0.419422" and "/" in data["ratio"]
    code, text = run("density", "--max", "2000", "--chunk", "500", "--report", "csv")
    assert code == 0 and text.splitlines()[0] == "lo,hi,total,solvable" and len(text.splitlines()) == 5
    assert run_json("density", "--max", "3000", "--family", "legendre-2")["family"] == "legendre-2"


def test_json_output_is_deterministic():
    assert run("--format", "json", "classgroup", "1105") == run("--format", "json", "classgroup", "1105")
    assert run("--format", "json", "density", "--max", "1000") == run("--format", "json", "density", "--max", "1000")


def test_human_output():
    code, text = run("solve", "5")
    assert code == 0 and "x: 2" in text


def test_verify_ok():
    data = run_json("verify", "rd-families", "--max", "10")
    assert data["failed"] == "0" and int(data["checked"]) > 0


@pytest.mark.parametrize(
    "argv, code",
    [
        (["solve", "4"], 2),
        (["descent", "12"], 2),
        (["density", "--max", str(10**9)], 2),
        (["criteria", "legendre_prime", "3", "5"], 2),
        (["solve"], 64),
        (["nope"], 64),
        (["solve", "x"], 64),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code


def test_theorem_violation_exit_code(monkeypatch):
    def boom(a):
        raise TheoremViolation("forced", {"d": 7})

    monkeypatch.setattr(cli, "cmd_cf", boom)
    code, text = run("cf", "7")
    assert code == 3 and json.loads(text) == {"d": "7"}


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pellkit.cli", "--format", "json", "solve", "2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["x"] == "1"
