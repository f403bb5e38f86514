"""CLI surface: commands, formats, exit codes, config precedence."""

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from artifact.cli import main

ENTRY_IDS = [
    "clifford-torus",
    "cosym-leaf",
    "cosym-tangent-block",
    "flat-torus-n2",
    "great-s3-alt",
    "great-s3-fiber",
    "real-circle",
]


@pytest.fixture()
def runner():
    return CliRunner()


# ---------------------------------------------------------------------------
# examples list
# ---------------------------------------------------------------------------


def test_examples_list_text(runner):
    result = runner.invoke(main, ["examples", "list"])
    assert result.exit_code == 0
    for eid in ENTRY_IDS:
        assert eid in result.output
    assert "AntiInvariant" in result.output
    assert "anchor:" in result.output


def test_examples_list_json(runner):
    result = runner.invoke(main, ["examples", "list", "--format", "json"])
    assert result.exit_code == 0
    entries = json.loads(result.output)
    assert [e["id"] for e in entries] == ENTRY_IDS
    for e in entries:
        assert set(e) == {"id", "description", "expected", "anchor"}
        assert e["anchor"].strip()


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_single_check_text(runner):
    result = runner.invoke(main, ["verify", "--check", "C01"])
    assert result.exit_code == 0
    assert "C01  Pass" in result.output
    assert "1 checks: 1 Pass, 0 Fail, 0 Skipped" in result.output


def test_verify_all_json(runner):
    result = runner.invoke(main, ["verify", "--all", "--format", "json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert set(payload) == {"version", "config", "reports"}
    assert len(payload["reports"]) == 17
    assert all(r["status"] == "Pass" for r in payload["reports"])
    assert [r["check_id"] for r in payload["reports"]] == [
        f"C{i:02d}" for i in range(1, 18)
    ]


def test_verify_default_is_all(runner):
    result = runner.invoke(main, ["verify", "--format", "json"])
    assert result.exit_code == 0
    assert len(json.loads(result.output)["reports"]) == 17


def test_verify_repeatable_check_flag(runner):
    result = runner.invoke(main, ["verify", "--check", "C02", "--check", "C04", "--format", "json"])
    assert result.exit_code == 0
    assert [r["check_id"] for r in json.loads(result.output)["reports"]] == ["C02", "C04"]


def test_verify_unknown_check_exits_2(runner):
    result = runner.invoke(main, ["verify", "--check", "C99"])
    assert result.exit_code == 2
    assert "unknown check id" in result.stderr


def test_verify_failing_tolerances_exit_1(runner):
    result = runner.invoke(
        main,
        ["verify", "--check", "C01", "--tol-alg", "1e-16", "--tol-d1", "1e-15", "--tol-d2", "1e-12"],
    )
    assert result.exit_code == 1
    assert "Fail" in result.output


def test_verify_strict_still_green(runner):
    result = runner.invoke(main, ["verify", "--check", "C03", "--strict"])
    assert result.exit_code == 0
    assert "Pass" in result.output


def test_verify_n2_reports_larger_sphere(runner):
    result = runner.invoke(main, ["verify", "--check", "C05", "--n", "2", "--format", "json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["config"]["n"] == 2
    assert payload["reports"][0]["example_ids"] == ["s11-pos"]


# ---------------------------------------------------------------------------
# config precedence: flags > file > defaults
# ---------------------------------------------------------------------------


def test_config_file_and_flag_precedence(runner, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 2\nseed = 7\n")
    result = runner.invoke(
        main,
        ["verify", "--check", "C01", "--config", str(cfg), "--seed", "42", "--format", "json"],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["config"]["n"] == 2  # from the file
    assert payload["config"]["seed"] == 42  # flag overrides the file


def test_config_file_unknown_key_exits_2(runner, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n = 2\nspline_tension = 3\n")
    result = runner.invoke(main, ["verify", "--check", "C01", "--config", str(cfg)])
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# dump
# ---------------------------------------------------------------------------


def test_dump_entry_frozen_values(runner):
    result = runner.invoke(main, ["dump", "clifford-torus", "--point", "0,0"])
    assert result.exit_code == 0
    assert "induced metric g = [0.5, 0; 0, 0.5]" in result.output
    assert "-0.353553" in result.output  # h(1,1) component -1/(2*sqrt(2))
    assert "classification: AntiInvariant, xi=(Normal,Normal,Tangent), dims=(1,2)" in result.output


def test_dump_entry_default_point_is_box_midpoint(runner):
    result = runner.invoke(main, ["dump", "real-circle"])
    assert result.exit_code == 0
    assert "u = [0.7]" in result.output


def test_dump_space_text(runner):
    result = runner.invoke(main, ["dump", "s7-pos"])
    assert result.exit_code == 0
    assert "tau = (-1, -1, 1)" in result.output
    assert "eps" in result.output


def test_dump_space_json(runner):
    result = runner.invoke(main, ["dump", "s7-neg", "--format", "json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["eps_declared"] == [1.0, 1.0, -1.0]
    assert payload["eps_computed"] == [1.0, 1.0, -1.0]


def test_dump_cosymplectic_space(runner):
    result = runner.invoke(main, ["dump", "r7-cosym"])
    assert result.exit_code == 0


def test_dump_rejects_malformed_space_dimension(runner):
    # sphere ids must have dimension 4n+3 with n >= 1
    result = runner.invoke(main, ["dump", "s8-pos"])
    assert result.exit_code == 2


def test_dump_unknown_target_exits_2(runner):
    result = runner.invoke(main, ["dump", "mystery-manifold"])
    assert result.exit_code == 2


def test_dump_off_manifold_point_exits_2(runner):
    result = runner.invoke(main, ["dump", "s7-pos", "--point", "2,0,0,0,0,0,0,0"])
    assert result.exit_code == 2
    assert "error:" in result.stderr


# ---------------------------------------------------------------------------
# module entry point
# ---------------------------------------------------------------------------


def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "artifact", "verify", "--check", "C02"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "C02  Pass" in proc.stdout
