import json
import subprocess
import sys

import pytest

from fanosieve.cli import parse_config, run
from fanosieve.report import dump_json


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_threefold_json(capsys):
    code, out, _ = _run(capsys, "sieve", "threefold", "--q-min", "23", "--q-max", "66", "--stages", "all",
                        "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["survivors"] == [24, 30, 42]
    assert data["range"] == {"q_min": 23, "q_max": 66}
    assert set(data["verdicts"][0]) == {"q", "J", "c1_cubed", "k", "status", "stage", "witness"}
    assert out.endswith("}\n") and not out.endswith("\n\n")


def test_json_round_trip_is_byte_identical(capsys):
    for argv in (["sieve", "threefold", "--q-min", "20", "--q-max", "44"],
                 ["sieve", "surface"], ["wps", "enumerate"], ["basket", "enumerate", "--J", "6", "--budget", "5"],
                 ["rr", "check", "--q", "40", "--deg", "40", "--basket", "5:1,8:1", "--trace", "5"]):
        _, out, _ = _run(capsys, *argv, "--format", "json")
        assert dump_json(json.loads(out)) == out


def test_table_and_json_agree(capsys):
    argv = ["sieve", "threefold", "--q-min", "23", "--q-max", "44"]
    _, table, _ = _run(capsys, *argv)
    _, js, _ = _run(capsys, *argv, "--format", "json")
    data = json.loads(js)
    rows = [line.split()[:6] for line in table.splitlines()[3:] if line and line[0].isdigit()]
    assert rows == [[str(v["q"]), str(v["J"]), str(v["c1_cubed"]), str(v["k"]), v["status"], v["stage"] or "-"]
                    for v in data["verdicts"]]
    assert "survivors: " + ", ".join(map(str, data["survivors"])) in table


def test_csv_output(capsys):
    _, out, _ = _run(capsys, "sieve", "surface", "--q-min", "3", "--q-max", "9", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "q,J,c1_squared,k,status,stage,witness"
    assert any(line.startswith("7,7,7,1,eliminated,budget,") for line in lines)


def test_wps_enumerate(capsys):
    code, out, _ = _run(capsys, "wps", "enumerate", "--gorenstein", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 14 and len(data["rows"]) == 14


def test_rr_check_q40(capsys):
    code, out, _ = _run(capsys, "rr", "check", "--q", "40", "--deg", "40", "--basket", "5:1,8:1")
    assert code == 0
    assert "verdict: inadmissible" in out
    uniform = next(line for line in out.splitlines() if line.startswith("uniform failing s"))
    assert "5" in uniform.split(":")[1].replace(" ", "").split(",")


def test_rr_check_trace_and_fixed_residues(capsys):
    _, out, _ = _run(capsys, "rr", "check", "--q", "40", "--deg", "40", "--basket", "5:1:0,8:1:0",
                     "--trace", "1", "--format", "json")
    data = json.loads(out)
    assert data["verdict"] == "not integral"
    assert data["trace"]["1"] == [[[0, 0], "1/80"]]


def test_phi_set(capsys):
    _, out, _ = _run(capsys, "arith", "phi-set", "--bound", "20", "--exclude", "60", "--format", "json")
    data = json.loads(out)
    assert data["max"] == 66 and 60 not in [r["m"] for r in data["rows"]]


def test_basket_enumerate(capsys):
    _, out, _ = _run(capsys, "basket", "enumerate", "--J", "40", "--budget", "14", "--format", "json")
    assert json.loads(out)["rows"] == [{"basket": "8:1,5:1", "cost": "507/40", "lcm": 40}]


@pytest.mark.parametrize("argv", [
    ["rr", "check", "--q", "40", "--deg", "40", "--basket", "5:x"],
    ["rr", "check", "--q", "40", "--deg", "0.5", "--basket", "5:1"],
    ["rr", "check", "--q", "40", "--deg", "40", "--basket", "5:1", "--trace", "40"],
    ["rr", "check", "--q", "40", "--deg", "40", "--basket", "5:1:1,8:1"],
    ["sieve", "threefold", "--q-min", "10", "--q-max", "5"],
    ["sieve", "threefold", "--stages", "budget,nonsense"],
    ["sieve", "surface", "--stages", "rr"],
    ["basket", "enumerate", "--J", "0", "--budget", "3"],
    ["wps", "enumerate", "--gorenstein", "--max-sum", "9"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2
    assert "error" in capsys.readouterr().err


def test_agreeing_runs_exit_0(capsys):
    code, _, err = _run(capsys, "sieve", "threefold", "--q-min", "40", "--q-max", "40", "--stages", "all")
    assert code == 0
    code, _, err = _run(capsys, "sieve", "threefold", "--q-min", "23", "--q-max", "66", "--stages", "budget")
    assert code == 0
    cfg = parse_config(["sieve", "threefold", "--stages", "budget,basket"])
    assert "rr" not in cfg.stages


def test_discrepancy_flagged_when_rr_elimination_disappears(capsys, monkeypatch):
    from fanosieve import sieve

    real = sieve.rr_admissible

    def lenient(q, c, basket, backend=None):
        check = real(q, c, basket, backend)
        if q == 28:
            return type(check)(q, check.c1cubed, basket, True, (0,) * len(basket), (), (), check.assignment_space)
        return check

    monkeypatch.setattr(sieve, "rr_admissible", lenient)
    code, _, err = _run(capsys, "sieve", "threefold", "--q-min", "26", "--q-max", "30")
    assert code == 1
    assert "q=28" in err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert run(["sieve", "surface", "--format", "json", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["survivors"] == [3, 4, 5, 6]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fanosieve", "arith", "phi-set", "--bound", "2"],
                          capture_output=True, text=True, check=True)
    assert "max: 6" in proc.stdout
