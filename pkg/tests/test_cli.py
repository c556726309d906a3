from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from infoflow.cli import main
from infoflow.errors import UsageError
from infoflow.report import Entry, render_report
from infoflow.verdict import Verdict

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
F = str(FIXTURES / "f_rank1.json")
G = str(FIXTURES / "g_rank1.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_positivity_counterexample_exits_one(capsys):
    code, out, _ = run(capsys, "axiom", "positivity", "--f", F, "--g", G)
    assert code == 1
    assert "positivity  FAILS (witness)" in out
    assert "x=x3, y=z2, lhs=-1, rhs=0" in out


def test_positivity_json(capsys):
    code, out, _ = run(capsys, "axiom", "positivity", "--f", F, "--g", G, "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["schema"] == 1
    first = doc["results"][0]
    assert first["name"] == "positivity" and first["witness"]["lhs"] == "-1"


def test_quantale_causality_fails(capsys):
    code, out, _ = run(capsys, "semiring", "check", "ideal-z2i", "--property", "causality", "--format", "json")
    assert code == 1
    w = json.loads(out)["results"][0]["witness"]
    assert (w["s"], w["t"], w["v"], w["w"]) == ("(2,4i)", "(4,2i)", "(2,4i)", "(4,2i)")


def test_semiring_check_holds(capsys):
    code, out, _ = run(capsys, "semiring", "check", "chain-3")
    assert code == 0
    assert "chain-3 causality  HOLDS (exhaustive)" in out


def test_semiring_list(capsys):
    code, out, _ = run(capsys, "semiring", "list", "--format", "json")
    names = [r["name"] for r in json.loads(out)["results"]]
    assert code == 0 and "ideal-z2i" in names and "rational" in names


def test_sampled_strategy_needs_seed(capsys):
    code, _, err = run(capsys, "semiring", "check", "rational", "--strategy", "sampled")
    assert code == 2 and "--seed" in err
    code, _, _ = run(capsys, "semiring", "check", "rational", "--strategy", "sampled", "--seed", "3",
                     "--samples", "50", "--property", "axioms")
    assert code == 0


def test_kernel_commands(capsys):
    code, out, _ = run(capsys, "kernel", "compose", "--f", F, "--g", G, "--format", "json")
    assert code == 0
    k = json.loads(out)["results"][0]["kernel"]
    assert k["entries"]["•"] == {"z1": "1", "z2": "0"}
    code, out, _ = run(capsys, "kernel", "deterministic", "--f", F)
    assert code == 1
    code, out, _ = run(capsys, "kernel", "tensor", "--f", F, "--g", G)
    assert code == 0


def test_repro(capsys):
    code, out, _ = run(capsys, "repro", "--tag", "pointed")
    assert code == 0
    assert out.splitlines() == ["pointed_ev_initial  MATCH", "pointed_discard_creative  MATCH"]
    code, out, _ = run(capsys, "repro", "quantale_z2i", "--format", "json")
    assert code == 0 and json.loads(out)["results"][0]["actual"]["sv"] == "(4,8i)"


def test_dilation_commands(capsys):
    code, out, _ = run(capsys, "dilation", "broadcasting", "--size", "2")
    assert code == 0 and "HOLDS" in out
    code, out, _ = run(capsys, "dilation", "broadcasting", "--size", "2", "--semiring", "rational")
    assert code == 1


def test_usage_and_io_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "kernel", "compose", "--f", F)[0] == 2
    assert run(capsys, "kernel", "deterministic", "--f", "/nonexistent.json")[0] == 2
    assert run(capsys, "semiring", "check", "no-such-semiring")[0] == 2
    assert run(capsys, "repro")[0] == 2
    assert run(capsys, "repro", "quantale_z2i", "--all")[0] == 2
    assert run(capsys, "axiom", "dmi", "--pi", F, "--max-env", "0")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "infoflow", "semiring", "check", "boolean",
                           "--property", "zerosumfree"], capture_output=True, text=True)
    assert proc.returncode == 0 and "HOLDS" in proc.stdout


def test_render_report_basics():
    assert json.loads(render_report([], "json")) == {"results": [], "schema": 1}
    line = render_report([Entry("x", Verdict.holds())])
    assert line.endswith("HOLDS (exhaustive)")
    entries = [Entry("a", Verdict.fails({"k": [1, 2]}, ["why"])), Entry("b", data={"n": 1})]
    assert render_report(entries) == render_report(entries)
    assert render_report(entries).splitlines() == ["a  FAILS (witness)", "  witness: k=[1,2]", "  why", "b"]
    with pytest.raises(UsageError):
        render_report(entries, "yaml")
