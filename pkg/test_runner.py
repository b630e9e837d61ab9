#!/usr/bin/env python3
"""Tests for the experiment runner: config layering, subcommands, outputs and the verify suite."""

import sys
import os

# Add repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from qu5it.compiler.ir import circuit_from_text
from qu5it.models import ExperimentConfig, ModelSpec
from qu5it.runner import cmd_bench, cmd_evolve, cmd_resources, cmd_signprob, cmd_spectrum, cmd_verify, main
from qu5it.runner.cli import build_parser, load_config, overrides
from qu5it.runner.commands import run_jobs
from qu5it.runner.outputs import data_rows, format_value
from qu5it.runner.verify import (
    check_algebra,
    check_closed_form,
    check_decompositions,
    check_mappings,
    check_resources,
    check_trotter_order,
    mutated_g_signs,
)


def make_config(tmp_path, **sections) -> ExperimentConfig:
    sections.setdefault("output", {"directory": str(tmp_path)})
    return ExperimentConfig.model_validate(sections)


# ==================== CONFIGURATION ====================

def test_model_spec_validation():
    with pytest.raises(ValidationError):
        ModelSpec(omega=3)
    with pytest.raises(ValidationError):
        ModelSpec(preset="set-7")
    with pytest.raises(ValidationError):
        ModelSpec(preset=None)
    explicit = ModelSpec(omega=4, preset=None, couplings={"epsilon": 1.0, "v": 0.2, "g": 0.3})
    assert explicit.coupling_set().as_tuple() == (1.0, 0.2, 0.3)


def test_experiment_config_validation():
    with pytest.raises(ValidationError):
        ExperimentConfig(jobs=0)
    with pytest.raises(ValidationError):
        ExperimentConfig.model_validate({"initial_state": {"digits": [1], "prep_angles": [0, 0, 0, 0]}})
    with pytest.raises(ValidationError):
        ExperimentConfig.model_validate({"evolution": {"n_trot": [0]}})


def test_time_grid():
    config = ExperimentConfig.model_validate({"evolution": {"t_max": 2.0, "points": 5}})
    assert config.evolution.grid() == [0.0, 0.5, 1.0, 1.5, 2.0]
    single = ExperimentConfig.model_validate({"evolution": {"t_max": 2.0, "points": 1}})
    assert single.evolution.grid() == [2.0]


def test_config_hash_tracks_content():
    a = ExperimentConfig()
    assert a.config_hash() == ExperimentConfig().config_hash()
    assert a.config_hash() != ExperimentConfig.model_validate({"model": {"omega": 4}}).config_hash()


def test_overrides_from_flags():
    args = build_parser().parse_args(
        ["evolve", "--omega", "4", "--preset", "set-2", "--n-trot", "2", "4", "--out", "runs", "--digits", "1", "4"])
    assert overrides(args) == {
        "output": {"directory": "runs"},
        "model": {"omega": 4, "preset": "set-2", "couplings": None},
        "initial_state": {"label": None, "digits": [1, 4]},
        "evolution": {"n_trot": [2, 4]},
    }


def test_explicit_couplings_fill_defaults():
    args = build_parser().parse_args(["signprob", "--g", "0.5", "--t", "0.4"])
    extra = overrides(args)
    assert extra["model"]["couplings"] == {"epsilon": 1.0, "v": 0.0, "g": 0.5}
    assert extra["evolution"] == {"t_max": 0.4}


def test_omega_max_shorthand():
    args = build_parser().parse_args(["resources", "--omega-max", "8"])
    assert overrides(args) == {"resources": {"omegas": [2, 4, 6, 8]}}


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps({
        "model": {"omega": 6, "preset": "set-3"},
        "evolution": {"points": 7, "seed": 99},
        "initial_state": {"label": "A"},
    }), encoding="utf-8")
    args = build_parser().parse_args(["evolve", "--config", str(path), "--omega", "4", "--digits", "2", "2"])
    config = load_config(args.config, overrides(args))
    assert config.model.omega == 4
    assert config.model.preset == "set-3"
    assert config.evolution.points == 7 and config.evolution.seed == 99
    # an initial state on the command line replaces the file's one entirely
    assert config.initial_state.label is None and config.initial_state.digits == [2, 2]


# ==================== EXIT CODES ====================

@pytest.mark.parametrize("argv", [
    ["evolve", "--omega", "3"],
    ["evolve", "--preset", "set-9"],
    ["spectrum", "--jobs", "0"],
    ["spectrum", "--config", "does-not-exist.json"],
])
def test_usage_errors_exit_with_two(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path)]) == 2


def test_mutated_pair_sign_fails_verification(tmp_path, capsys):
    assert main(["verify", "--mutate-g-sign", "--out", str(tmp_path)]) == 1
    report = capsys.readouterr().out
    assert "[FAIL] paJW spectral equivalence" in report
    assert "sigma(14) flipped" in report


# ==================== SUBCOMMANDS ====================

def test_spectrum_command(tmp_path):
    config = make_config(tmp_path, spectrum={"omegas": [2], "presets": ["set-1"], "particle_numbers": [2]})
    result = cmd_spectrum(config)
    assert [p.name for p in result.paths] == ["spectrum.csv", "spectrum.json"]
    assert result.summary["rows"] == 3
    assert result.summary["ground_densities"]["omega=2,set-1,N=2"] == pytest.approx(-0.957107, abs=1e-6)
    rows = data_rows(result.paths[0].read_text(encoding="utf-8"))
    assert rows[0] == "omega,N,set,level,energy_density"


def test_evolve_reruns_are_identical(tmp_path):
    sections = {
        "model": {"omega": 4, "preset": "set-1"},
        "evolution": {"t_max": 1.0, "points": 5, "n_trot": [2], "shots": 200, "seed": 3},
    }
    first = cmd_evolve(make_config(tmp_path, output={"directory": str(tmp_path / "a")}, **sections))
    second = cmd_evolve(make_config(tmp_path, output={"directory": str(tmp_path / "b")}, **sections))
    text_a = first.paths[0].read_text(encoding="utf-8")
    text_b = second.paths[0].read_text(encoding="utf-8")
    assert data_rows(text_a) == data_rows(text_b)
    # exact and Trotter series, each with a shot-sampled companion
    assert len(data_rows(text_a)) == 1 + 4 * 5
    assert text_a.startswith("# command:")
    assert "2" in first.summary["trotter_max_error"]


def test_evolve_manifest_side_car(tmp_path):
    config = make_config(tmp_path, model={"omega": 2, "preset": "set-2"}, evolution={"points": 3, "seed": 5})
    result = cmd_evolve(config)
    payload = json.loads((tmp_path / "evolve_omega2.json").read_text(encoding="utf-8"))
    assert payload["manifest"]["command"] == "evolve"
    assert payload["manifest"]["config_hash"] == config.config_hash()
    assert payload["manifest"]["seed"] == 5
    assert "evolve" in payload["manifest"]["stages"]
    assert payload["summary"]["omega"] == 2
    assert result.summary["min_survival"] <= 1.0


def test_shot_rows_of_prepared_state_have_no_survival(tmp_path):
    config = make_config(tmp_path, model={"omega": 2, "preset": "set-1"},
                         initial_state={"label": None, "prep_angles": [0.3, 0.2, 0.1, 0.4]},
                         evolution={"points": 2, "shots": 50})
    cmd_evolve(config)
    rows = data_rows((tmp_path / "evolve_omega2.csv").read_text(encoding="utf-8"))[1:]
    shot_rows = [row.split(",") for row in rows if row.split(",")[-1] == "50"]
    assert len(shot_rows) == 2
    assert all(row[1] == "nan" for row in shot_rows)


def test_emit_circuit(tmp_path):
    target = tmp_path / "circuits" / "step.qir"
    config = make_config(tmp_path, model={"omega": 4, "preset": "set-4"},
                         evolution={"points": 2, "n_trot": [1, 3]},
                         output={"directory": str(tmp_path), "emit_circuit": str(target)})
    result = cmd_evolve(config)
    circuit = circuit_from_text(target.read_text(encoding="utf-8"))
    assert circuit.n_qudits == 2
    assert len(circuit) == result.summary["circuit"]["gates"]
    assert result.summary["circuit"]["tally"]["g_xx"] == 3 * 20


def test_resources_command(tmp_path):
    config = make_config(tmp_path, resources={"omegas": [4, 40]})
    result = cmd_resources(config)
    native = result.summary["qu5it"]["40"]["native"]
    assert native["g_xx"] + native["g_yy"] == 7600
    assert result.summary["blocks"]["paJW two-body"] == [16, 64, 128]
    assert result.summary["blocks"]["StS one-body"] == [2, 9, 10]
    assert "paJW" in result.report and "StS" in result.report
    rows = data_rows((tmp_path / "resources.csv").read_text(encoding="utf-8"))
    assert f"40,qu5it-controlled,{5 ** 20},45600" in rows


def test_signprob_command(tmp_path):
    config = make_config(tmp_path, model={"omega": 4, "preset": "set-4"}, evolution={"t_max": 0.4})
    result = cmd_signprob(config)
    assert result.summary["nonzero_probabilities"] >= 1
    assert result.summary["sz"] == pytest.approx(
        result.summary["mean"] * result.summary["nonzero_spin_densities"], abs=1e-9)
    assert "omega" in result.report.lower()


def test_bench_command(tmp_path):
    config = make_config(tmp_path, bench={"omegas": [2, 4], "n_trot": [1]})
    result = cmd_bench(config)
    rows = data_rows(result.paths[0].read_text(encoding="utf-8"))
    assert rows[0] == "omega,n_trot,backend,gates,compile_s,execute_s"
    assert len(rows) == 3
    assert result.summary["backend"] == "native"


def test_run_jobs_orders_by_key():
    jobs = {key: (lambda key=key: key * key) for key in (3, 1, 2)}
    assert run_jobs(jobs, workers=1) == [(1, 1), (2, 4), (3, 9)]
    assert run_jobs(jobs, workers=3) == [(1, 1), (2, 4), (3, 9)]


def test_format_value():
    assert format_value(0.1 + 0.2) == "0.3"
    assert format_value(-0.0) == "0"
    assert format_value(np.int64(3)) == "3"
    assert format_value(np.bool_(True)) == "True"
    assert format_value(float("nan")) == "nan"
    assert format_value(math.pi, 3) == "3.14"


# ==================== VERIFY SUITE ====================

def test_resource_checks_pass():
    assert all(check.passed for check in check_resources())


def test_closed_form_checks_pass():
    assert all(check.passed for check in check_closed_form(samples=20))


def test_algebra_checks_pass():
    checks = check_algebra(1e-13)
    assert [c.name for c in checks] == ["commutator tables", "trace orthonormality", "L_ij relation"]
    assert all(check.passed for check in checks)


def test_decomposition_checks_pass():
    assert all(check.passed for check in check_decompositions(samples=3))


def test_mapping_checks():
    assert all(check.passed for check in check_mappings())
    failed = [check.name for check in check_mappings(mutated_g_signs()) if not check.passed]
    assert "paJW spectral equivalence" in failed
    assert "StS spectral equivalence" in failed


def test_trotter_checks_pass():
    order, comparison = check_trotter_order()
    assert order.name == "first-order Trotter convergence"
    assert order.passed and order.deviation < 0.1
    assert comparison.name == "state B converges slower than state A"
    assert comparison.passed and comparison.deviation < 0.9


def test_trotter_comparison_is_strict(monkeypatch):
    from qu5it.runner import verify

    monkeypatch.setattr(verify, "trotter_distance", lambda model, label, t, n_trot: 0.1)
    _, comparison = check_trotter_order(steps=(8, 16), compare_steps=(8,), grid=(0.5,))
    assert comparison.deviation == 1.0
    assert not comparison.passed


def test_full_suite_passes(tmp_path, capsys):
    assert main(["verify", "--out", str(tmp_path)]) == 0
    report = capsys.readouterr().out
    assert "[FAIL]" not in report
    assert "[PASS] first-order Trotter convergence" in report


def test_verify_command_writes_report(tmp_path, monkeypatch):
    from qu5it.runner import verify

    monkeypatch.setattr(verify, "SUITE", {"resources": check_resources})
    result = cmd_verify(make_config(tmp_path))
    assert result.exit_code == 0
    assert result.summary == {"passed": 6, "failed": 0, "failures": []}
    assert "6 of 6 checks passed" in result.report


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
