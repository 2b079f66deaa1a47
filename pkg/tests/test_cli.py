import json
import os
import subprocess
import sys

import pytest

from unitscheme.cli import main
from unitscheme.suites import normalize_lambda, run, worker_count


def _cli(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "unitscheme.cli", *args],
                          capture_output=True, env=full_env)


def test_exit_zero_when_all_pass(capsys):
    assert main(["--suite", "cor-3.2", "--prime", "3"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] D equals closed form" in out
    assert "T_1^3" in out


def test_exit_one_on_failure(capsys):
    assert main(["--suite", "thm-3.3", "--prime", "2"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] σ̃# is a bialgebra hom" in out and "lhs:" in out


@pytest.mark.parametrize("args", [["--suite", "hopf-axioms", "--prime", "4"],
                                  ["--suite", "nope", "--prime", "3"],
                                  ["--suite", "all", "--prime", "3", "--lambda", "x"],
                                  ["--suite", "all", "--prime", "3", "--seed", "-1"],
                                  ["--prime", "3"]])
def test_usage_errors_exit_two(args):
    with pytest.raises(SystemExit) as exc:
        main(args)
    assert exc.value.code == 2


def test_structured_output_fields(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["--suite", "prop-3.10", "--prime", "2", "--format", "structured",
                 "--out", str(out)])
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert code == 0
    assert set(doc) == {"tool_version", "suite", "prime", "lambda_mode", "seed", "checks"}
    assert doc["suite"] == "prop-3.10" and doc["prime"] == 2
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)
    assert all({"name", "ref", "status"} <= set(c) for c in doc["checks"])
    assert capsys.readouterr().out == out.read_text(encoding="utf-8")


def test_fail_entries_carry_witness():
    rep = run("thm-3.3", 3)
    doc = rep.to_dict()
    for c in doc["checks"]:
        if c["status"] == "fail":
            assert c["witness"]["lhs"] and c["witness"]["rhs"]


def test_deep_gating_skips_heavy_suites_at_p5():
    rep = run("prop-4.3", 5)
    assert rep.ok and [c.status for c in rep.checks] == ["skipped-vacuous"]


def test_scalar_lambda_is_reduced():
    assert normalize_lambda("7", 5) == "2"
    assert normalize_lambda("10", 5) == "zero"
    rep = run("cor-3.2", 3, "4")
    assert rep.lambda_mode == "1" and rep.ok


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("VERIFY_THREADS", "1")
    assert worker_count(8) == 1
    monkeypatch.delenv("VERIFY_THREADS")
    assert worker_count(3) == 3


def test_structured_report_is_byte_identical_across_runs_and_worker_counts():
    args = ["--suite", "all", "--prime", "2", "--seed", "7", "--format", "structured"]
    a = _cli(*args)
    b = _cli(*args, env={"VERIFY_THREADS": "1"})
    assert a.stdout == b.stdout
    assert a.returncode == b.returncode == 1
    json.loads(a.stdout.decode("utf-8"))
