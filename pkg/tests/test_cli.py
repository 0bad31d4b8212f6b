"""CLI surface: table formats, determinism, exit codes."""

from __future__ import annotations

import json
import math
import subprocess
import sys

import pytest

from biphoton.cli import main

FIG1_SCAN = "experiment fig1\nangle theta1 0\nscan theta2 0 180 5\n"


def write_spec(tmp_path, text, name="scenario.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_fig1_scan_csv(tmp_path, capsys):
    path = write_spec(tmp_path, FIG1_SCAN)
    code, out, err = run_cli(capsys, "run", path)
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "param,value,closed_form,abs_error"
    assert len(lines) == 38
    row90 = next(line for line in lines if line.startswith("90,"))
    assert row90.split(",")[1] == "0.25"


def test_run_uses_newline_endings_and_is_deterministic(tmp_path, capsys):
    path = write_spec(tmp_path, FIG1_SCAN)
    _, first, _ = run_cli(capsys, "run", path)
    _, second, _ = run_cli(capsys, "run", path)
    assert first == second
    assert "\r" not in first


def test_run_json_format(tmp_path, capsys):
    path = write_spec(tmp_path, "experiment pdc\nstate psi_e\nangle theta1 0\nangle theta2 90\noutput json\n")
    code, out, _ = run_cli(capsys, "run", path)
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["param"] == "coincidence_rate"
    assert rows[0]["value"] == pytest.approx(0.5, abs=1e-9)
    assert rows[0]["abs_error"] <= 1e-9


def test_run_fig2_entangled_all_zero_rows(tmp_path, capsys):
    path = write_spec(tmp_path, "experiment fig2\nstate psi_e\nscan theta3 0 90 15\n")
    code, out, _ = run_cli(capsys, "run", path)
    assert code == 0
    for line in out.splitlines()[1:]:
        _, value, closed, abs_err = line.split(",")
        assert float(value) == 0.0
        assert float(closed) == 0.0
        assert float(abs_err) == 0.0


def test_run_writes_output_file(tmp_path, capsys):
    path = write_spec(tmp_path, FIG1_SCAN)
    out_path = tmp_path / "table.csv"
    code, out, _ = run_cli(capsys, "run", path, "--out", str(out_path))
    assert code == 0 and out == ""
    content = out_path.read_bytes()
    assert content.startswith(b"param,value,closed_form,abs_error\n")
    assert b"\r" not in content


def test_run_missing_file(capsys):
    code, _, err = run_cli(capsys, "run", "/nonexistent/spec.txt")
    assert code == 1
    assert "no such scenario file" in err


def test_run_parse_error_exit_code(tmp_path, capsys):
    path = write_spec(tmp_path, "experiment fig1\nangle theta1 banana\n")
    code, _, err = run_cli(capsys, "run", path)
    assert code == 1
    assert "line 2" in err


def test_run_validation_error_exit_code(tmp_path, capsys):
    path = write_spec(tmp_path, "experiment fig1\nangle theta9 0\n")
    code, _, err = run_cli(capsys, "run", path)
    assert code == 1
    assert "not a parameter" in err


def test_scan_subcommand_matches_run(tmp_path, capsys):
    path = write_spec(tmp_path, FIG1_SCAN)
    _, from_file, _ = run_cli(capsys, "run", path)
    _, from_flags, _ = run_cli(
        capsys, "scan", "--experiment", "fig1", "--angle", "theta1", "0", "--scan", "theta2", "0", "180", "5"
    )
    assert from_flags == from_file


def test_scan_subcommand_cascade_geometry(capsys):
    code, out, _ = run_cli(
        capsys,
        "scan",
        "--experiment",
        "cascade",
        "--geometry",
        "1+0i",
        "1+0i",
        "1+0i",
        "0.5+0.5i",
        "--angle",
        "theta1",
        "0",
        "--angle",
        "theta2",
        "0",
    )
    assert code == 0
    value = float(out.splitlines()[1].split(",")[1])
    assert value == pytest.approx(0.25, abs=1e-12)


def test_chsh_canonical_row(capsys):
    code, out, _ = run_cli(capsys, "chsh", "--format", "csv")
    assert code == 0
    param, value, closed, abs_err = out.splitlines()[1].split(",")
    assert param == "abs_S"
    assert value == "2.82842712475"
    assert float(abs_err) <= 1e-9
    assert float(closed) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-11)


def test_chsh_explicit_angles_degenerate(capsys):
    code, out, _ = run_cli(capsys, "chsh", "--a", "0", "--ap", "0", "--b", "22.5", "--bp", "22.5")
    assert code == 0
    value = float(out.splitlines()[1].split(",")[1])
    assert value <= 2.0 + 1e-9


def test_selfcheck_passes(capsys):
    code, out, _ = run_cli(capsys, "selfcheck")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "param,value,closed_form,abs_error"
    names = [line.split(",")[0] for line in lines[1:]]
    for expected in (
        "fig1_sin2_max_abs_err",
        "pdc_shape_max_dev",
        "cascade_cos2_max_abs_err",
        "fig2_psi_e_max_rate",
        "fig3_visibility_psi_u",
        "overlap_entangled_component",
        "factorization_max_amp_diff",
        "chsh_abs_psi_u",
        "same_channel_psi_u_ch1",
        "circular_outcome_total",
    ):
        assert expected in names


def test_selfcheck_corrupted_reference_exits_2(capsys):
    code, out, _ = run_cli(capsys, "selfcheck", "--corrupt", "fig1_sin2_max_abs_err")
    assert code == 2
    row = next(line for line in out.splitlines() if line.startswith("fig1_sin2_max_abs_err,"))
    assert float(row.split(",")[3]) > 1e-9


def test_selfcheck_unknown_corrupt_row(capsys):
    code, _, err = run_cli(capsys, "selfcheck", "--corrupt", "nope")
    assert code == 1
    assert "no selfcheck row" in err


def test_selfcheck_json(capsys):
    code, out, _ = run_cli(capsys, "selfcheck", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert all(row["abs_error"] is not None for row in rows)


def test_tolerance_flag_can_force_mismatch(tmp_path, capsys):
    path = write_spec(tmp_path, FIG1_SCAN)
    code, _, _ = run_cli(capsys, "run", path, "--tolerance", "-1")
    assert code == 2


def test_module_invocation_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "biphoton", "chsh"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "abs_S" in proc.stdout
