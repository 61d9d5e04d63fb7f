import json
import subprocess
import sys
from pathlib import Path

import pytest

from netcode.cli import main

RUN = [sys.executable, "-m", "netcode"]


def run_cli(*argv):
    proc = subprocess.run(RUN + list(argv), capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_detect_parity_passes(capsys):
    code = main(["detect", "--graph", "complete:4", "--code", "parity",
                 "--m", "2", "--protocol", "parity", "--no-timestamp"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS detect-exhaustive" in out
    assert "max_bits=6" in out  # 3m bits


def test_detect_triangle_passes(capsys):
    code = main(["detect", "--graph", "cycle:3", "--code", "rep", "--m", "3",
                 "--protocol", "triangle", "--no-timestamp"])
    assert code == 0
    assert "cost=" in capsys.readouterr().out


def test_detect_unknown_protocol_is_usage_error():
    rc, _, err = run_cli("detect", "--graph", "cycle:3", "--m", "2",
                         "--protocol", "nope")
    assert rc == 2
    assert "invalid choice" in err


def test_detect_unknown_code_is_usage_error(capsys):
    assert main(["detect", "--graph", "cycle:3", "--code", "huh", "--m", "2",
                 "--protocol", "triangle"]) == 2


def test_correct_cycle_passes(capsys):
    code = main(["correct", "--graph", "cycle:4", "--m", "2", "--no-timestamp"])
    assert code == 0
    assert "PASS correct-exhaustive" in capsys.readouterr().out


def test_correct_refuses_t2(capsys):
    assert main(["correct", "--graph", "cycle:3", "--m", "2", "--t", "2"]) == 2


def test_bounds_json_and_values(tmp_path, capsys):
    out_path = tmp_path / "bounds.json"
    code = main(["bounds", "--graph", "cycle:5", "--n", "5", "--k", "1",
                 "--d", "5", "--format", "json", "--no-timestamp",
                 "--output", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    rows = {r[0]: r[1] for r in payload["report"]["rows"]}
    assert rows["lp"] == "5/2"


def test_bounds_mds(capsys):
    assert main(["bounds", "--n", "4", "--k", "2", "--mds", "--no-timestamp"]) == 0
    out = capsys.readouterr().out
    assert "mds" in out and "3" in out


def test_bounds_inapplicable_still_exits_zero(capsys):
    assert main(["bounds", "--n", "4", "--k", "3", "--d", "2",
                 "--graph", "complete:4", "--no-timestamp"]) == 0
    assert "inapplicable" in capsys.readouterr().out


def test_bounds_bad_k(capsys):
    assert main(["bounds", "--n", "4", "--k", "x/y"]) == 2


def test_verify_all_quick_passes_and_mutate_fails(tmp_path):
    rc, out, _ = run_cli("verify-all", "--quick", "--no-timestamp",
                         "--workers", "1")
    assert rc == 0
    assert "PASS overall" in out
    rc, out, _ = run_cli("verify-all", "--quick", "--no-timestamp",
                         "--workers", "1", "--mutate")
    assert rc == 1
    assert "counterexample" in out or "FAIL" in out


def test_verify_all_reports_are_deterministic(tmp_path):
    # identical config, different parallelism: byte-identical reports
    paths = []
    for workers in ("1", "2"):
        path = tmp_path / f"report-{workers}.json"
        rc, _, _ = run_cli("verify-all", "--quick", "--no-timestamp",
                           "--workers", workers, "--format", "json",
                           "--output", str(path))
        assert rc == 0
        paths.append(path.read_bytes())
    assert paths[0] == paths[1]
    rerun = tmp_path / "rerun.json"
    rc, _, _ = run_cli("verify-all", "--quick", "--no-timestamp",
                       "--workers", "1", "--format", "json",
                       "--output", str(rerun))
    assert rerun.read_bytes() == paths[0]


def test_config_file_defaults_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("graph=cycle:3\nm=2\nprotocol=triangle\nno-timestamp=true\n")
    assert main(["detect", "--config", str(cfg)]) == 0
    assert main(["detect", "--config", str(cfg), "--m", "3"]) == 0


def test_env_budget_override(tmp_path):
    proc = subprocess.run(
        RUN + ["detect", "--graph", "cycle:3", "--m", "3", "--protocol",
               "triangle"],
        capture_output=True, text=True, env={"PATH": "/usr/bin:/bin",
                                             "NETCODE_BUDGET": "10"})
    assert proc.returncode == 2
    assert "budget" in proc.stderr


def test_explicit_code_file_through_cli(tmp_path, capsys):
    from netcode.codes import MDSCode, save_explicit_code
    path = tmp_path / "mds.code"
    save_explicit_code(MDSCode(3, 2, 2), path)
    assert main(["detect", "--graph", "complete:3", "--code", f"file:{path}",
                 "--m", "2", "--protocol", "trivial", "--no-timestamp"]) == 0
    assert "PASS" in capsys.readouterr().out
