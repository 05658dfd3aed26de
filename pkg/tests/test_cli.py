import json
import math
import subprocess
import sys

import pytest

from multicount.asymptotics import Estimate
from multicount.cli import main, run
from multicount.degrees import Multigraph
from multicount.switching import SwitchingMove


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_count_exact(capsys):
    code, out, _ = call(capsys, "count", "exact", "--degrees", "3,3,3,3", "--J", "0,1", "--Jstar", "0")
    assert code == 0 and out["count"] == "1"
    code, out, _ = call(capsys, "count", "exact", "--degrees", "3,3,3,3,3,3", "--method", "backtrack")
    assert out["count"] == "70"


def test_count_region_and_class(capsys):
    _, out, _ = call(capsys, "count", "region", "--degrees", "4,1,1,1,1", "--region", "Z")
    assert int(out["count"]) > 0 and out["thresholds"]["N1"] >= 1
    _, out, _ = call(capsys, "count", "class", "--degrees", "2,2", "--sig", "0,1,0")
    assert out["count"] == "1"


def test_regular_estimate_q(capsys):
    code, out, _ = call(capsys, "estimate", "corollary", "--k", "3", "--n", "10", "--J", "0,1", "--Jstar", "0")
    assert code == 0 and out["Q"] == 2.225 and out["Q_exact"] == "89/40"


def test_estimate_payloads_reparse(capsys):
    for action in ("theorem1", "pairing", "naive", "theorem5"):
        _, out, _ = call(capsys, "estimate", action, "--degrees", "3,3,2,2,2,2,1,1")
        est = Estimate.from_json(out["estimate"])
        assert json.loads(json.dumps(est.to_json())) == out["estimate"]


def test_naive_fixed_p(capsys):
    _, out, _ = call(capsys, "estimate", "naive", "--degrees", "1,1,0", "--p", "0.5")
    assert out["estimate"]["value"] == pytest.approx(16 / 27)


def test_compare_ratios(capsys):
    _, out, _ = call(capsys, "compare", "--degrees", "3,3,3,3,3,3,3,3")
    assert out["exact_count"] == "19355"
    for name, row in out["estimators"].items():
        assert row["ratio_estimate_over_exact"] == pytest.approx(math.exp(row["log_difference"]), rel=1e-12), name
        assert row["estimate"]["label"]


def test_compare_keeps_rows_without_p0(capsys):
    code, out, _ = call(capsys, "compare", "--degrees", "3,3,3,3,3,3")
    assert code == 0 and out["exact_count"] == "70"
    assert out["estimators"]["naive"]["error"] == "Unachievable"
    assert "log_difference" in out["estimators"]["theorem1"]


def test_verify_network_bound(tmp_path, capsys):
    net = {
        "vertices": [{"id": "y", "N": 2}, {"id": "z", "N": 4}],
        "edges": [{"from": "y", "to": "z", "colour": 1, "alpha": "1/2", "s": 4}],
        "lambda": {"z": {"1": 1}},
        "Y": ["y"],
        "Z": ["z"],
    }
    path = tmp_path / "net.json"
    path.write_text(json.dumps(net))
    code, out, _ = call(capsys, "verify", "theorem2", "--network", str(path))
    assert code == 0
    assert out["lhs"] == "2" and out["rhs"] == "2" and out["holds"] is True


def test_verify_switchings(capsys):
    code, out, _ = call(capsys, "verify", "switchings", "--degrees", "4,1,1,1,1", "--colours", "9,13")
    assert code == 0 and out["feasible"] is True


def test_verify_summation(capsys):
    _, out, _ = call(capsys, "verify", "summation", "--reps", "50", "--seed", "3")
    assert out["holds"] is True


def test_switch_commands(tmp_path, capsys):
    Q = Multigraph.from_cells(5, {(0, 0): 2, (1, 2): 1, (3, 4): 1})
    g = tmp_path / "q.json"
    g.write_text(json.dumps(Q.to_json()))
    _, out, _ = call(capsys, "switch", "active", "--graph", str(g))
    assert out["active_colour"] == 9
    _, out, _ = call(capsys, "switch", "moves", "--graph", str(g), "--colour", "9")
    assert out["count"] == 8
    move = out["moves"][0]
    assert SwitchingMove.from_json(move).to_json() == move
    _, out, _ = call(capsys, "switch", "apply", "--graph", str(g), "--move", json.dumps(move))
    R = Multigraph.from_json(out["result"])
    assert R.degrees() == Q.degrees()
    r = tmp_path / "r.json"
    r.write_text(json.dumps(R.to_json()))
    _, out, _ = call(capsys, "switch", "reverse", "--graph", str(r), "--colour", "9")
    assert 1 <= int(out["reverse_count"]) <= int(out["b_c"])
    _, out, _ = call(capsys, "switch", "stats", "--graph", str(g))
    assert out["in_G0"] is True and out["stats"]["L"] == 1


def test_sample_commands(capsys):
    _, a, _ = call(capsys, "sample", "pairing", "--degrees", "3,3,2", "--seed", "4", "--reps", "3")
    _, b, _ = call(capsys, "sample", "pairing", "--degrees", "3,3,2", "--seed", "4", "--reps", "3")
    assert a == b and len(a["samples"]) == 3
    _, m, _ = call(capsys, "sample", "matrix", "--degrees", "2,2,1,1,1,1", "--seed", "1", "--reps", "2")
    assert len(m["samples"]) == 2 and 0 < m["p"] < 1


@pytest.mark.parametrize("argv,error", [
    (["count", "exact", "--degrees", "3,3,3"], "OddTotalDegree"),
    (["count", "exact"], "ParseError"),
    (["frobnicate"], "ParseError"),
    (["estimate", "naive", "--degrees", "30,1,1", "--J", "0,1"], None),
])
def test_errors_exit_nonzero(capsys, argv, error):
    code, _, err = call(capsys, *argv)
    assert code == 2
    name = json.loads(err)["error"]
    if error:
        assert name == error


def test_json_report(capsys):
    code, out, _ = call(capsys, "count", "exact", "--degrees", "1,1", "--json")
    assert set(out) == {"command", "inputs", "result", "timings", "seed"}
    assert out["command"] == "count exact" and out["result"]["count"] == "1"
    assert out["inputs"]["degrees"] == "1,1"


def test_run_returns_report():
    report = run(["estimate", "theorem1", "--degrees", "3,3,3,3"])
    assert report["result"]["estimate"]["leading_term"] == "385/48"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "multicount", "count", "exact", "--degrees", "3,3,3,3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["count"] == "1"
