"""State preparation chains of Givens rotations and their angle fitting.

A chain on one qu5it applies exp(-i t_k G_{k,k+1}) for k = 0..3 in that
order. Starting from level s, each level's amplitude is a product of cosines
and sines times a fixed phase pattern set by the kind: a step up the chain
multiplies by -i for X and +1 for Y, a step down by -i for X and -1 for Y.
Any target whose amplitudes divided by that pattern are real (up to a global
phase) is reachable; the angles follow from nested atan2 calls.
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from qu5it.compiler.ir import CircuitIR, CtrlGivens, GivensRot, execute
from qu5it.engine.state import StateVector, init_basis_state
from qu5it.errors import DomainError

logger = logging.getLogger(__name__)

CHAIN_LEVELS = ((0, 1), (1, 2), (2, 3), (3, 4))
_STEP_UP = {"X": -1j, "Y": 1.0}
_STEP_DOWN = {"X": -1j, "Y": -1.0}


def _check_start(start_level: int):
    if start_level not in (0, 1):
        raise DomainError(f"chains start from level 0 or 1, got {start_level}")


def _check_angles(angles: Sequence[float], count: int) -> Tuple[float, ...]:
    angles = tuple(float(a) for a in angles)
    if len(angles) != count:
        raise DomainError(f"expected {count} angles, got {len(angles)}")
    return angles


def chain_phases(start_level: int, kind: str) -> np.ndarray:
    up, down = _STEP_UP[kind], _STEP_DOWN[kind]
    if start_level == 0:
        return np.array([1.0, up, up ** 2, up ** 3, up ** 4], dtype=np.complex128)
    return np.array([down, 1.0, up, up ** 2, up ** 3], dtype=np.complex128)


def chain_gates(angles: Sequence[float], kind: str, qudit: int) -> list:
    return [GivensRot(kind, levels, theta, qudit) for levels, theta in zip(CHAIN_LEVELS, angles)]


def prep_single(angles: Sequence[float], start_level: int = 1, kind: str = "X") -> CircuitIR:
    """
    One-qu5it preparation circuit.

    Args:
        angles: theta_0..theta_3 for the level pairs (01), (12), (23), (34)
        start_level: Input basis level, 1 by default
        kind: Givens kind of the rotations

    Returns:
        CircuitIR on one qudit; metadata records the start digits
    """
    angles = _check_angles(angles, 4)
    _check_start(start_level)
    return CircuitIR(1, chain_gates(angles, kind, 0),
                     {"start_digits": str(start_level), "prep": f"single-{kind}"})


def prep_two(angles: Sequence[float], start_level: int = 0) -> CircuitIR:
    """
    Two-qu5it preparation of an arbitrary real wavefunction.

    Angles 0..3 drive a Y chain on qudit 0. Angles 4+4m .. 7+4m drive a Y
    chain on qudit 1 controlled on qudit 0 being in level m, for m = 0..4.
    With all angles zero the circuit is the identity on |s>|s>.
    """
    angles = _check_angles(angles, 24)
    _check_start(start_level)
    circuit = CircuitIR(2, chain_gates(angles[:4], "Y", 0),
                        {"start_digits": f"{start_level}{start_level}", "prep": "two-Y"})
    for m in range(5):
        block = angles[4 + 4 * m: 8 + 4 * m]
        for levels, theta in zip(CHAIN_LEVELS, block):
            circuit.append(CtrlGivens(0, (m,), 1, "Y", levels, theta))
    return circuit


def prepare(circuit: CircuitIR) -> StateVector:
    """Run a preparation circuit on the start state recorded in its metadata."""
    digits = [int(c) for c in str(circuit.metadata.get("start_digits", "1" * circuit.n_qudits))]
    return execute(circuit, init_basis_state(circuit.n_qudits, digits))


def _real_profile(amplitudes: np.ndarray, start_level: int, kind: str) -> np.ndarray:
    amplitudes = np.asarray(amplitudes, dtype=np.complex128)
    if amplitudes.shape != (5,):
        raise DomainError(f"expected 5 amplitudes, got shape {amplitudes.shape}")
    norm = np.linalg.norm(amplitudes)
    if norm == 0:
        raise DomainError("cannot fit a zero vector")
    profile = amplitudes / norm / chain_phases(start_level, kind)
    if np.abs(profile.imag).max() > 1e-9:
        # real profiles keep their sign so conditional rows stay consistent
        lead = profile[np.argmax(np.abs(profile))]
        profile = profile * (abs(lead) / lead)
    if np.abs(profile.imag).max() > 1e-9:
        raise DomainError(f"target is not reachable by a real {kind} chain from level {start_level}")
    return profile.real


def fit_single_angles(amplitudes: Sequence[complex], start_level: int = 1, kind: str = "X") -> Tuple[float, ...]:
    """
    Chain angles reproducing ``amplitudes`` up to a global phase.

    Raises:
        DomainError: If the target has relative phases the chain cannot produce
    """
    _check_start(start_level)
    r = _real_profile(np.asarray(amplitudes), start_level, kind)

    def tail(k: int) -> float:
        return float(np.linalg.norm(r[k:]))

    if start_level == 0:
        theta0 = np.arctan2(tail(1), r[0])
    else:
        theta0 = np.arctan2(r[0], tail(1))
    theta1 = np.arctan2(tail(2), r[1])
    theta2 = np.arctan2(tail(3), r[2])
    theta3 = np.arctan2(r[4], r[3])
    return (float(theta0), float(theta1), float(theta2), float(theta3))


def fit_two_angles(amplitudes: np.ndarray, start_level: int = 0) -> Tuple[float, ...]:
    """
    24 angles for prep_two reproducing a real two-qu5it state.

    The 5x5 amplitude matrix M[m, n] is split into row norms A_m, prepared on
    qudit 0, and conditional rows M[m, :]/A_m prepared on qudit 1 (|start>
    when a row vanishes).
    """
    matrix = np.asarray(amplitudes, dtype=np.complex128).reshape(5, 5)
    lead = matrix.flat[np.argmax(np.abs(matrix))]
    matrix = matrix * (abs(lead) / lead)
    if np.abs(matrix.imag).max() > 1e-9:
        raise DomainError("prep_two reaches real wavefunctions only")
    matrix = matrix.real
    row_norms = np.linalg.norm(matrix, axis=1)
    angles = list(fit_single_angles(row_norms, start_level, "Y"))
    for m in range(5):
        if row_norms[m] < 1e-14:
            angles.extend([0.0, 0.0, 0.0, 0.0])
        else:
            angles.extend(fit_single_angles(matrix[m] / row_norms[m], start_level, "Y"))
    return tuple(angles)
