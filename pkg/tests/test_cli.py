from __future__ import annotations

import json
import subprocess
import sys
import time

import pytest

from matwaring import TheoremReport
from matwaring.cli import main

GOLDEN = [
    (["trace-power", "--k", "16", "--ring", "Z/100", "--t", "1", "--delta", "0"], 0),
    (["trace-power", "--k", "10", "--ring", "Z/20", "--t", "3", "--delta", "2", "--reduced", "--explain"], 0),
    (["verify", "--family", "deg9", "--ring", "Z/3[e]/(e^2)"], 0),
    (["verify", "--family", "deg15", "--ring", "F_4"], 1),
    (["order", "--poly", "x^2-x+1", "--p", "3"], 0),
    (["order", "--poly", "x^2-x-1", "--p", "3", "--family", "deg9"], 0),
    (["set", "--kind", "s14", "--ring", "Z/14", "--element", "1"], 0),
    (["set", "--kind", "wittstar24", "--ring", "Z/8"], 0),
    (["subgroup", "--k", "9", "--ring", "F_4", "--n", "3"], 0),
    (["decide", "--k", "2", "--ring", "Z/3", "--matrix", "2; 2,0; 0,2", "--witness"], 0),
    (["identity", "--k", "10", "--id", "main"], 0),
    (["identity", "--k", "14"], 0),
    (["certify", "--k", "11", "--ring", "Z/11", "--entry", "p_3"], 0),
    (["certify", "--k", "15", "--ring", "F_4"], 1),
    # usage, config and budget errors
    ([], 2),
    (["frobnicate"], 2),
    (["verify", "--family", "deg8", "--ring", "Z/2"], 2),
    (["verify", "--family", "deg9", "--ring", "Z/1"], 2),
    (["trace-power", "--k", "two", "--ring", "Z/5", "--t", "1", "--delta", "0"], 2),
    (["order", "--poly", "2x^2+1", "--p", "3"], 2),
    (["order", "--poly", "x^2+1", "--p", "4"], 2),
    (["identity", "--k", "10", "--id", "nope"], 2),
    (["certify", "--k", "8"], 2),
    (["decide", "--k", "2", "--ring", "Z/7", "--matrix", "2; 1,0; 0,1", "--witness", "--max-terms", "3"], 2),
    (["subgroup", "--k", "7", "--ring", "Z/4[e]/(e^2)", "--n", "3", "--budget", "50"], 2),
    (["universe", "/nonexistent/universe.txt"], 2),
]


@pytest.mark.parametrize("argv,code", GOLDEN, ids=[" ".join(a) or "<empty>" for a, _ in GOLDEN])
def test_golden_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_trace_power_prints_one(capsys):
    main(["trace-power", "--k", "16", "--ring", "Z/100", "--t", "1", "--delta", "0"])
    assert capsys.readouterr().out.strip() == "1"


def test_verify_json_round_trips(capsys):
    assert main(["verify", "--family", "deg9", "--ring", "Z/3[e]/(e^2)", "--json"]) == 0
    text = capsys.readouterr().out
    rep = TheoremReport.from_json(text)
    assert rep.agreement
    assert all(not s.verdict for s in rep.statements if s.id[0] in "123")
    assert json.loads(rep.to_json()) == json.loads(text)


def test_order_reports_fails(capsys):
    main(["order", "--poly", "x^2-x+1", "--p", "3"])
    out = capsys.readouterr().out
    assert "disc = -3" in out and "FAILS" in out


def test_decide_reads_file(tmp_path, capsys):
    p = tmp_path / "m.txt"
    p.write_text("2; e,0; 0,0\n")
    assert main(["decide", "--k", "9", "--ring", "Z/3[e]/(e^2)", "--matrix", str(p), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "NO"


def test_universe_small_and_malformed(tmp_path, capsys):
    good = tmp_path / "u.txt"
    good.write_text("Z/2\n")
    start = time.perf_counter()
    assert main(["universe", str(good)]) == 0
    assert time.perf_counter() - start < 1.0
    bad = tmp_path / "bad.txt"
    bad.write_text("Z/2 budget=lots\n")
    assert main(["universe", str(bad)]) == 2
    assert main(["universe", str(good), "--remark", "16", "x+1", "x"]) == 0
    assert "exploratory" in capsys.readouterr().out


def test_universe_reports_failures(tmp_path, capsys):
    cfg = tmp_path / "u.txt"
    cfg.write_text("F_4\n")
    assert main(["universe", str(cfg), "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    failed = {t["task"] for t in data["tasks"] if not t["ok"]}
    assert failed == {"theorem deg15 Z/2[a]/(a^2+a+1)", "chain deg15 Z/2[a]/(a^2+a+1)"}


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "matwaring", "trace-power", "--k", "2", "--ring", "F_4",
                          "--t", "a", "--delta", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "a+1"  # t^2 - 2d = a^2
