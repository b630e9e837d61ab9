#!/usr/bin/env python3
"""Tests for the qubit mappings: Pauli algebra, encodings, diagonalizers and gate costs."""

import sys
import os

# Add repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from qu5it.errors import DomainError, Qu5itError
from qu5it.mappings import (
    CliffordGate,
    LadderSum,
    PauliSum,
    comparison_table,
    count_pajw,
    count_sts,
    diagonalizer,
    embed_state,
    encoding,
    mapped_hamiltonian,
    off_diagonal_residue,
    operator_image_deviations,
    pajw_hamiltonian,
    physical_leakage,
    physical_spectrum,
    propagate,
    sts_hamiltonian,
    term_costs,
    verify_equivalence,
)
from qu5it.mappings.circuits import clifford_unitary, conjugate
from qu5it.mappings.costs import mapping_blocks, sigma_group_cost, z_string_cost
from qu5it.mappings.encodings import one_body_ladder
from qu5it.model import G_SIGNS, PRESETS, ModelInstance, full_hamiltonian, initial_state

MAPPINGS = ["paJW", "StS"]


# ==================== PAULI ALGEBRA ====================

def test_pauli_products():
    x, y = PauliSum({"X": 1}), PauliSum({"Y": 1})
    assert (x * y).coefficient("Z") == 1j
    assert (y * x).coefficient("Z") == -1j
    assert (x * x).coefficient("I") == 1


def test_ladder_letters_expand():
    plus = LadderSum([(1, "+")]).expand()
    assert plus.coefficient("X") == 0.5 and plus.coefficient("Y") == 0.5j
    assert np.array_equal(plus.to_dense(), [[0, 1], [0, 0]])
    projector = LadderSum([(1, "1")]).expand()
    assert np.array_equal(projector.to_dense(), [[0, 0], [0, 1]])


def test_pauli_text_form():
    parsed = PauliSum.from_text("# comment\n−0.5 ZIZI\n0.25 XXYY\n")
    assert parsed.coefficient("ZIZI") == -0.5
    assert parsed.to_text() == "0.25 XXYY\n-0.5 ZIZI\n"
    with pytest.raises(DomainError):
        PauliSum.from_text("0.5\n")
    with pytest.raises(DomainError):
        PauliSum.from_text("half ZZ\n")
    with pytest.raises(DomainError):
        PauliSum.from_text("1.0 ZQ\n")


def test_from_terms_accumulates():
    summed = PauliSum.from_terms([(0.5, "XZ"), (0.5, "XZ"), (-1.0, "ZZ")])
    assert summed.coefficient("XZ") == 1
    assert [t.letters for t in summed.terms()] == ["XZ", "ZZ"]


def test_non_hermitian_sum_is_rejected():
    with pytest.raises(Qu5itError):
        LadderSum([(1, "+I")]).expand().terms()


def test_overlapping_join_raises():
    with pytest.raises(DomainError):
        LadderSum([(1, "+I")]).join(LadderSum([(1, "-I")]))


# ==================== ENCODINGS ====================

@pytest.mark.parametrize("kind", MAPPINGS)
def test_level_images_are_orthonormal(kind):
    images = encoding(kind).images
    assert np.abs(images.conj().T @ images - np.eye(5)).max() <= 1e-15


@pytest.mark.parametrize("kind", MAPPINGS)
def test_physical_projector(kind):
    projector = encoding(kind).physical_projector(2)
    assert np.trace(projector).real == pytest.approx(25)
    assert np.abs(projector @ projector - projector).max() <= 1e-12


@pytest.mark.parametrize("kind", MAPPINGS)
def test_operator_images(kind):
    deviations = operator_image_deviations(kind)
    assert set(deviations) == {"Tz", "X13", "Npairs", "T+", "B"}
    assert max(deviations.values()) <= 1e-12


@pytest.mark.parametrize("kind", MAPPINGS)
@pytest.mark.parametrize("n_mode_pairs", [1, 2])
@pytest.mark.parametrize("name", sorted(PRESETS))
def test_spectral_equivalence(kind, n_mode_pairs, name):
    assert verify_equivalence(kind, n_mode_pairs, PRESETS[name]) <= 1e-10


@pytest.mark.parametrize("kind", MAPPINGS)
def test_physical_subspace_is_invariant(kind):
    assert physical_leakage(kind, 2, PRESETS["set-4"]) <= 1e-12


@pytest.mark.parametrize("kind", MAPPINGS)
def test_mutated_pair_sign_breaks_equivalence(kind):
    signs = dict(G_SIGNS)
    signs[(1, 4)] = -signs[(1, 4)]
    assert verify_equivalence(kind, 2, PRESETS["set-1"], signs) > 0.1


def test_pairwise_composition_beyond_two_mode_pairs():
    assert verify_equivalence("StS", 3, PRESETS["set-2"]) <= 1e-10


def test_named_mapping_hamiltonians():
    assert pajw_hamiltonian(1, PRESETS["set-1"]).n_qubits == 4
    assert sts_hamiltonian(2, PRESETS["set-1"]).to_text() == mapped_hamiltonian("StS", 2, PRESETS["set-1"]).to_text()


def test_physical_spectrum_matches_qudit_spectrum():
    assert physical_spectrum("paJW", 1, PRESETS["set-1"])[0] == pytest.approx(-1.914214, abs=1e-6)
    model = ModelInstance.from_preset(4, "set-3")
    expected = np.linalg.eigvalsh(full_hamiltonian(model).toarray())
    assert physical_spectrum("StS", 2, model.couplings) == pytest.approx(expected, abs=1e-10)


def test_embedded_initial_states():
    assert np.flatnonzero(embed_state(initial_state(2, "A"), "paJW").amplitudes).tolist() == [0b0101]
    assert np.flatnonzero(embed_state(initial_state(4, "B"), "StS").amplitudes).tolist() == [0b100000]


def test_mapped_hamiltonian_sizes():
    h = mapped_hamiltonian("paJW", 2, PRESETS["set-4"])
    assert h.n_qubits == 8
    assert h.hermiticity_deviation() <= 1e-15
    assert mapped_hamiltonian("StS", 2, PRESETS["set-4"]).n_qubits == 6


def test_unknown_mapping():
    with pytest.raises(DomainError):
        encoding("parity")


# ==================== DIAGONALIZERS ====================

@pytest.mark.parametrize("letters", ["XXXX", "XYYX", "YYXX", "XZYY"])
def test_propagation_matches_dense_conjugation(letters):
    gates = diagonalizer((0, 1, 2, 3))
    sign, image = propagate(letters, gates)
    k = clifford_unitary(gates, 4)
    dense = k @ PauliSum({letters: 1}).to_dense() @ k.conj().T
    assert np.abs(dense - sign * PauliSum({image: 1}).to_dense()).max() <= 1e-12


def test_diagonalizer_makes_even_y_strings_diagonal():
    for letters in ("XXXX", "XXYY", "YXYX", "YYYY"):
        _, image = propagate(letters, diagonalizer((0, 1, 2, 3)))
        assert set(image) <= {"I", "Z"}


def test_pair_hopping_is_diagonalized():
    hopping = LadderSum([(1, "-+-+"), (1, "+-+-")]).expand()
    assert off_diagonal_residue(hopping, diagonalizer((0, 1, 2, 3))) <= 1e-12
    pairing = LadderSum([(1, "+Z+I-Z-I"), (1, "-Z-I+Z+I")]).expand()
    assert off_diagonal_residue(pairing, diagonalizer((0, 2, 4, 6))) <= 1e-12


def test_symbolic_conjugation_of_hopping():
    hopping = LadderSum([(1, "-+-+"), (1, "+-+-")]).expand()
    image = conjugate(hopping, diagonalizer((0, 1, 2, 3)))
    assert image.terms()
    assert all(term.is_diagonal for term in image.terms())


def test_clifford_gate_validation():
    with pytest.raises(DomainError):
        CliffordGate("CZ", (0, 1))
    with pytest.raises(DomainError):
        CliffordGate("CNOT", (1, 1))
    with pytest.raises(DomainError):
        diagonalizer(())


# ==================== GATE COSTS ====================

def test_group_cost_formulas():
    assert sigma_group_cost(4, 0, 0) == (2, 8, 14)
    assert sigma_group_cost(2, 1, 1) == (2, 4, 2 + 4 + 2 + 2)
    assert sigma_group_cost(1, 0, 0) == (2, 1, 0)
    assert z_string_cost(3) == (0, 1, 4)
    assert z_string_cost(3, folded=True) == (0, 1, 0)


@pytest.mark.parametrize("mapping, one, two", [
    ("paJW", (2, 14, 14), (16, 64, 128)),
    ("StS", (2, 9, 10), (32, 512, 688)),
])
def test_block_costs(mapping, one, two):
    one_body, two_body = mapping_blocks(mapping)
    assert (one_body.h, one_body.rz, one_body.cnot) == one
    assert (two_body.h, two_body.rz, two_body.cnot) == two


def test_term_costs_sum_to_block():
    rows = term_costs(one_body_ladder("paJW", PRESETS["set-1"]))
    assert sum(r.cnot for r in rows) == 14
    assert {r.group for r in rows} <= {"sigma", "z-pivot", "z-string"}


def test_mapping_totals():
    sts = count_sts(4).total
    assert (sts.h, sts.rz, sts.cnot) == (36, 530, 708)
    assert count_pajw(40).cnot == 24_600
    assert count_sts(40).cnot == 130_920
    assert count_pajw(4).hilbert_dim == 2 ** 8
    assert count_sts(4).hilbert_dim == 2 ** 6


def test_comparison_table():
    rows = comparison_table([2, 40])
    assert [r.mapping for r in rows[:4]] == ["qu5it-controlled", "qu5it-native", "paJW", "StS"]
    by_name = {(r.omega, r.mapping): r for r in rows}
    assert by_name[(40, "qu5it-controlled")].entangling == 45_600
    assert by_name[(40, "qu5it-native")].entangling == 7_600
    assert by_name[(40, "StS")].hilbert_dim == 2 ** 60
    assert by_name[(2, "qu5it-native")].hilbert_dim == 5


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
