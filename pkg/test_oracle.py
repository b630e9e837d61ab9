#!/usr/bin/env python3
"""Tests for the exact oracle: closed-form propagator, sector evolution, overlaps and diagnostics."""

import sys
import os

# Add repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from scipy.linalg import expm

from qu5it.algebra.so5 import N_DIAG, TZ_DIAG
from qu5it.config import settings
from qu5it.engine import StateVector, expect_diagonal, init_basis_state
from qu5it.errors import DomainError, ResourceLimitError
from qu5it.model import PRESETS, CouplingSet, ModelInstance, initial_state, one_body_h
from qu5it.oracle import (
    ExactEvolver,
    closed_form_params,
    eigen_overlaps,
    evolve_exact,
    long_time_statistics,
    observable_series,
    sign_diagnostics,
    trotter_series,
    u1_closed_form,
)


def random_state(n: int, seed: int) -> StateVector:
    rng = np.random.default_rng(seed)
    amplitudes = rng.normal(size=5 ** n) + 1j * rng.normal(size=5 ** n)
    return StateVector(n, amplitudes / np.linalg.norm(amplitudes))


# ==================== CLOSED FORM ====================

@hyp_settings(max_examples=100, deadline=None)
@given(
    st.floats(0.1, 2.0),
    st.floats(-2.0, 2.0),
    st.floats(-2.0, 2.0),
    st.floats(0.0, 5.0),
)
def test_closed_form_matches_dense_exponential(eps, v, g, t):
    couplings = CouplingSet(eps, v, g)
    dense = expm(-1j * t * one_body_h(couplings))
    assert np.abs(u1_closed_form(couplings, t) - dense).max() <= 1e-12


@pytest.mark.parametrize("name, minimum", [("set-1", 0.5), ("set-2", 0.2), ("set-3", 0.2), ("set-4", 0.1)])
def test_survival_minimum(name, minimum):
    params = closed_form_params(PRESETS[name])
    assert params.min_survival == pytest.approx(minimum, abs=1e-12)
    quarter_period = np.pi / (2 * params.alpha)
    assert params.survival(quarter_period) == pytest.approx(minimum, abs=1e-12)
    times = np.linspace(0, 10, 401)
    assert min(params.survival(t) for t in times) >= minimum - 1e-12


def test_uncoupled_closed_form_is_diagonal():
    u = u1_closed_form(PRESETS["set-0"], 0.7)
    assert np.abs(u - np.diag(np.diag(u))).max() == 0
    assert closed_form_params(PRESETS["set-0"]).survival(0.7) == pytest.approx(1.0)


# ==================== EXACT EVOLUTION ====================

def test_single_pair_evolution_matches_closed_form():
    model = ModelInstance.from_preset(2, "set-2")
    state = random_state(1, 1)
    evolved = evolve_exact(model, state, 1.3)
    assert np.abs(evolved.amplitudes - u1_closed_form(model.couplings, 1.3) @ state.amplitudes).max() <= 1e-12


def test_sector_and_full_paths_agree():
    model = ModelInstance.from_preset(6, "set-4")
    state = random_state(3, 2)
    auto = evolve_exact(model, state, 0.8)
    full = evolve_exact(model, state, 0.8, method="full")
    assert np.abs(auto.amplitudes - full.amplitudes).max() <= 1e-10
    assert auto.norm() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DomainError):
        evolve_exact(model, state, 0.8, method="rk4")


def test_krylov_blocks_agree_with_dense(monkeypatch):
    model = ModelInstance.from_preset(8, "set-3")
    state0 = initial_state(8, "A")
    dense = ExactEvolver(model).evolve(state0, 0.5)
    monkeypatch.setattr(settings, "dense_eigh_limit", 50)
    krylov_evolver = ExactEvolver(model)
    krylov = krylov_evolver.evolve(state0, 0.5)
    assert not krylov_evolver.block(8).dense
    assert np.abs(dense.amplitudes - krylov.amplitudes).max() <= 1e-9


def test_evolution_conserves_particle_number():
    model = ModelInstance.from_preset(8, "set-4")
    evolved = evolve_exact(model, initial_state(8, "B"), 2.0)
    assert expect_diagonal(evolved, N_DIAG) == pytest.approx(8.0, abs=1e-10)


def test_evolution_limits(monkeypatch):
    model = ModelInstance.from_preset(6, "set-1")
    with pytest.raises(DomainError):
        ExactEvolver(model).evolve(init_basis_state(2, [1, 1]), 0.1)
    monkeypatch.setattr(settings, "max_qudits_full_space", 2)
    with pytest.raises(ResourceLimitError):
        ExactEvolver(model).evolve(random_state(3, 3), 0.1)
    # a single-sector state is still accepted
    ExactEvolver(model).evolve(initial_state(6, "A"), 0.1)


# ==================== OVERLAPS ====================

def test_single_pair_overlaps():
    spectrum = eigen_overlaps(ModelInstance.from_preset(2, "set-1"), initial_state(2, "A"))
    assert spectrum.count == 2
    assert spectrum.total == pytest.approx(1.0)
    assert spectrum.energies[0] == pytest.approx(-0.5 - np.sqrt(2), abs=1e-12)
    ranked = spectrum.by_overlap()
    assert ranked[0][1] >= ranked[1][1]


def test_overlaps_sum_to_one():
    for label in ("A", "B"):
        spectrum = eigen_overlaps(ModelInstance.from_preset(8, "set-4"), initial_state(8, label))
        assert spectrum.total == pytest.approx(1.0, abs=1e-10)
        assert np.all(np.diff(spectrum.energies) > 0)


@pytest.mark.parametrize("preset, largest", [("set-1", 0.343), ("set-2", 0.409), ("set-3", 0.471), ("set-4", 0.386)])
def test_state_a_overlaps_spread_over_levels(preset, largest):
    # at omega 8 no single level carries half of |A>
    spectrum = eigen_overlaps(ModelInstance.from_preset(8, preset), initial_state(8, "A"))
    assert spectrum.total == pytest.approx(1.0, abs=1e-10)
    assert spectrum.largest == pytest.approx(largest, abs=2e-3)
    assert spectrum.largest < 0.5


def test_state_b_overlaps_are_spread():
    spectrum = eigen_overlaps(ModelInstance.from_preset(8, "set-4"), initial_state(8, "B"))
    assert spectrum.largest == pytest.approx(0.2857, abs=2e-3)
    assert spectrum.count > 20
    ranked = spectrum.by_overlap()
    assert all(ranked[k][1] >= ranked[k + 1][1] for k in range(len(ranked) - 1))


# ==================== OBSERVABLE SERIES ====================

def test_initial_row():
    row = observable_series(ModelInstance.from_preset(8, "set-1"), initial_state(8, "A"), [0.0])[0]
    assert row.survival == pytest.approx(1.0)
    assert row.sz == pytest.approx(-4.0)
    assert row.n == pytest.approx(8.0)
    assert row.pairs == pytest.approx(4.0)


def test_single_pair_survival_follows_closed_form():
    model = ModelInstance.from_preset(2, "set-3")
    params = closed_form_params(model.couplings)
    grid = np.linspace(0, 3, 13)
    rows = observable_series(model, initial_state(2, "A"), grid)
    assert [r.survival for r in rows] == pytest.approx([params.survival(t) for t in grid], abs=1e-12)


def test_trotter_series_labels():
    model = ModelInstance.from_preset(4, "set-1")
    rows = trotter_series(model, initial_state(4, "A"), [0.0, 0.5], n_trot=4)
    assert {(r.evolver, r.n_trot) for r in rows} == {("trotter", 4)}
    with pytest.raises(DomainError):
        observable_series(model, initial_state(4, "A"), [0.5], evolver="trotter")
    with pytest.raises(DomainError):
        observable_series(model, initial_state(4, "A"), [0.5], evolver="euler")


def test_long_time_statistics():
    model = ModelInstance.from_preset(2, "set-1")
    rows = observable_series(model, initial_state(2, "A"), np.linspace(0, 50, 201))
    stats = long_time_statistics(rows)
    mean, variance = stats["n"]
    assert mean == pytest.approx(2.0) and variance == pytest.approx(0.0, abs=1e-20)
    survival_mean, _ = stats["survival"]
    assert 0.5 <= survival_mean <= 1.0
    with pytest.raises(DomainError):
        long_time_statistics(rows, tail_fraction=0.0)


# ==================== SIGN DIAGNOSTICS ====================

def test_stationary_state_has_single_density():
    model = ModelInstance.from_preset(8, "set-0")
    diagnostics = sign_diagnostics(evolve_exact(model, initial_state(8, "A"), 0.4))
    assert diagnostics.probabilities == pytest.approx([1.0])
    assert diagnostics.sz == pytest.approx(-4.0)


@pytest.mark.parametrize("label", ["A", "B"])
def test_spin_densities_sum_to_expectation(label):
    state = evolve_exact(ModelInstance.from_preset(8, "set-4"), initial_state(8, label), 0.4)
    diagnostics = sign_diagnostics(state)
    assert diagnostics.sz == pytest.approx(expect_diagonal(state, TZ_DIAG), abs=1e-12)
    assert diagnostics.spin_densities.sum() == pytest.approx(diagnostics.sz, abs=1e-9)
    assert diagnostics.mean * diagnostics.spin_densities.size == pytest.approx(diagnostics.sz, abs=1e-9)
    assert np.all(np.diff(diagnostics.spin_densities) >= 0)
    assert np.all(np.diff(diagnostics.probabilities) <= 0)
    assert diagnostics.probabilities.sum() == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("label, mean, std, sz", [("A", -0.03, 0.13, -1.4), ("B", -0.004, 0.011, -0.17)])
def test_reference_sign_statistics(label, mean, std, sz):
    state = evolve_exact(ModelInstance.from_preset(8, "set-4"), initial_state(8, label), 0.4)
    diagnostics = sign_diagnostics(state)
    assert diagnostics.mean == pytest.approx(mean, abs=0.005)
    assert diagnostics.std == pytest.approx(std, abs=0.005)
    assert diagnostics.sz == pytest.approx(sz, abs=0.05)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
