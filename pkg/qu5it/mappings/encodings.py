"""
Qubit encodings of the qu5it: physics-aware Jordan-Wigner and state-to-state.

Each encoding fixes the qubit images of the five qu5it levels and authors the
single mode-pair operators Tz, X13, Npairs, T+ and B = b_up + b_down as ladder
sums. Mapped Hamiltonians are composed from those operators exactly like the
qu5it Hamiltonian is composed from its one- and two-body blocks.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional

import numpy as np
from scipy import linalg

from qu5it.algebra.givens import givens
from qu5it.algebra.so5 import SQRT2, g as so5_matrix
from qu5it.engine.state import StateVector
from qu5it.errors import DomainError, ResourceLimitError
from qu5it.mappings.pauli import LadderSum, PauliSum
from qu5it.model.couplings import CouplingSet, ModelInstance
from qu5it.model.hamiltonian import LevelPair, full_hamiltonian

logger = logging.getLogger(__name__)

MAX_EMBED_QUBITS = 16
OPERATOR_NAMES = ("Tz", "X13", "Npairs", "T+", "B")


@dataclass(frozen=True, eq=False)
class Encoding:
    """Qubit images of the five qu5it levels plus the mapped single mode-pair operators."""

    kind: str
    qubits_per_qudit: int
    images: np.ndarray  # (2**qubits_per_qudit, 5), orthonormal columns
    operators: Dict[str, LadderSum] = field(repr=False)

    def isometry(self, n_mode_pairs: int) -> np.ndarray:
        """Tensor-product isometry from n qu5its to n blocks of qubits."""
        n_qubits = n_mode_pairs * self.qubits_per_qudit
        if n_qubits > MAX_EMBED_QUBITS:
            raise ResourceLimitError(f"{self.kind} embedding qubits", n_qubits, MAX_EMBED_QUBITS)
        v = np.ones((1, 1), dtype=np.complex128)
        for _ in range(n_mode_pairs):
            v = np.kron(v, self.images)
        return v

    def physical_projector(self, n_mode_pairs: int) -> np.ndarray:
        v = self.isometry(n_mode_pairs)
        return v @ v.conj().T


def _basis(n_qubits: int, index: int) -> np.ndarray:
    e = np.zeros(1 << n_qubits, dtype=np.complex128)
    e[index] = 1.0
    return e


def _pajw() -> Encoding:
    # occupied = |0>, empty = |1>
    images = np.column_stack([
        _basis(4, 0b1111),
        _basis(4, 0b0101),
        (_basis(4, 0b0110) + _basis(4, 0b1001)) / SQRT2,
        _basis(4, 0b1010),
        _basis(4, 0b0000),
    ])
    operators = {
        "Tz": LadderSum([(0.5, "I0II"), (0.5, "III0"), (-0.5, "0III"), (-0.5, "II0I")]),
        "X13": LadderSum([(1, "-+-+"), (1, "+-+-")]),
        "Npairs": LadderSum([(1, "0I0I"), (1, "I0I0")]),
        "T+": LadderSum([(1, "-+II"), (1, "II-+")]),
        "B": LadderSum([(-1, "-Z-I"), (-1, "I-Z-")]),
    }
    return Encoding("paJW", 4, images, operators)


def _sts() -> Encoding:
    images = np.column_stack([_basis(3, level) for level in range(5)])
    operators = {
        "Tz": LadderSum([(-1, "0Z1")]),
        "X13": LadderSum([(1, "0X1")]),
        "Npairs": LadderSum([(0.5, "III"), (-0.5, "ZIZ"), (1, "1Z0")]),
        "T+": LadderSum([(SQRT2, "0-+"), (SQRT2, "01-")]),
        "B": LadderSum([(1, "0++"), (-1, "+0-"), (1, "00+"), (-1, "+--")]),
    }
    return Encoding("StS", 3, images, operators)


_BUILDERS = {"pajw": _pajw, "sts": _sts}


@lru_cache(maxsize=None)
def encoding(kind: str) -> Encoding:
    """Look up an encoding by name ("paJW" or "StS", case-insensitive)."""
    try:
        return _BUILDERS[kind.lower()]()
    except KeyError:
        raise DomainError(f"unknown qubit mapping {kind!r}, expected 'paJW' or 'StS'") from None


def qudit_operator(name: str) -> np.ndarray:
    """5x5 matrix of a mapped operator name."""
    if name == "X13":
        return givens("X", 1, 3).matrix
    if name == "B":
        return so5_matrix("b_up") + so5_matrix("b_down")
    if name in ("Tz", "Npairs", "T+"):
        return so5_matrix(name)
    raise DomainError(f"unknown mapped operator {name!r}, expected one of {OPERATOR_NAMES}")


def operator_image_deviations(kind: str) -> Dict[str, float]:
    """max |M E - E m| per operator, with E the level images and m the qu5it matrix."""
    enc = encoding(kind)
    out = {}
    for name in OPERATOR_NAMES:
        mapped = enc.operators[name].to_sparse()
        out[name] = float(np.abs(mapped @ enc.images - enc.images @ qudit_operator(name)).max())
    return out


def embed_state(state: StateVector, kind: str) -> StateVector:
    """Tensor product of the per-qu5it images; returns a qubit register state."""
    enc = encoding(kind)
    v = enc.isometry(state.n_qudits)
    return StateVector(state.n_qudits * enc.qubits_per_qudit, v @ state.amplitudes, levels=2, check=False)


def one_body_ladder(kind: str, couplings: CouplingSet) -> LadderSum:
    """eps*Tz - (V+g)*X13 - g*Npairs on one block of qubits."""
    eps, v, g = couplings.as_tuple()
    ops = encoding(kind).operators
    return ops["Tz"] * eps + ops["X13"] * -(v + g) + ops["Npairs"] * -g


def _pair_ladder(kind: str, couplings: CouplingSet, i: int, j: int, n_mode_pairs: int) -> LadderSum:
    enc = encoding(kind)
    width = enc.qubits_per_qudit
    total = n_mode_pairs * width
    _, v, g = couplings.as_tuple()
    t_plus, b = enc.operators["T+"], enc.operators["B"]

    def place(op: LadderSum, k: int) -> LadderSum:
        return op.embed(k * width, total)

    pairs = place(t_plus, i).join(place(t_plus, j))
    hops = place(b.adjoint(), i).join(place(b, j)) + place(b, i).join(place(b.adjoint(), j))
    return (pairs + pairs.adjoint()) * -v + hops * -g


def two_body_ladder(kind: str, couplings: CouplingSet) -> LadderSum:
    """-V (T+ T+ + h.c.) - g (B^dag B + B B^dag) on two adjacent blocks."""
    return _pair_ladder(kind, couplings, 0, 1, 2)


def hamiltonian_ladder(kind: str, n_mode_pairs: int, couplings: CouplingSet) -> LadderSum:
    """One-body blocks on every mode pair plus the two-body block on every pair of them."""
    if n_mode_pairs < 1:
        raise DomainError(f"need at least one mode pair, got {n_mode_pairs}")
    width = encoding(kind).qubits_per_qudit
    one = one_body_ladder(kind, couplings)
    h = LadderSum()
    for i in range(n_mode_pairs):
        h = h + one.embed(i * width, n_mode_pairs * width)
    for i in range(n_mode_pairs):
        for j in range(i + 1, n_mode_pairs):
            h = h + _pair_ladder(kind, couplings, i, j, n_mode_pairs)
    return h


def mapped_hamiltonian(kind: str, n_mode_pairs: int, couplings: CouplingSet) -> PauliSum:
    n_qubits = n_mode_pairs * encoding(kind).qubits_per_qudit
    ladder = hamiltonian_ladder(kind, n_mode_pairs, couplings)
    return (PauliSum.identity(n_qubits, 0.0) + ladder.expand()).simplify()


def pajw_hamiltonian(n_mode_pairs: int, couplings: CouplingSet) -> PauliSum:
    """Agassi Hamiltonian on 4 qubits per mode pair."""
    return mapped_hamiltonian("paJW", n_mode_pairs, couplings)


def sts_hamiltonian(n_mode_pairs: int, couplings: CouplingSet) -> PauliSum:
    """Agassi Hamiltonian on 3 qubits per mode pair, binary level encoding."""
    return mapped_hamiltonian("StS", n_mode_pairs, couplings)


def _projected(kind: str, n_mode_pairs: int, couplings: CouplingSet):
    enc = encoding(kind)
    v = enc.isometry(n_mode_pairs)
    h = mapped_hamiltonian(kind, n_mode_pairs, couplings).to_sparse()
    hv = h @ v
    return v, hv, v.conj().T @ hv


def verify_equivalence(
    kind: str,
    n_mode_pairs: int,
    couplings: CouplingSet,
    g_signs: Optional[Dict[LevelPair, int]] = None
) -> float:
    """
    max |V^dag H_qubit V - H_qu5it| for the tensor-product isometry V.

    ``g_signs`` alters the qu5it side only; the mapped Hamiltonian always uses
    the physical signs.
    """
    _, _, projected = _projected(kind, n_mode_pairs, couplings)
    model = ModelInstance(2 * n_mode_pairs, couplings)
    reference = full_hamiltonian(model, g_signs).toarray()
    deviation = float(np.abs(projected - reference).max())
    logger.debug(f"{kind} equivalence, {n_mode_pairs} mode pairs: {deviation:.3e}")
    return deviation


def physical_leakage(kind: str, n_mode_pairs: int, couplings: CouplingSet) -> float:
    """
    max |(1 - P) H P| with P the projector onto physical images.

    H is Hermitian, so a zero value also means unphysical states are never fed
    into the physical subspace.
    """
    v, hv, projected = _projected(kind, n_mode_pairs, couplings)
    return float(np.abs(hv - v @ projected).max())


def physical_spectrum(kind: str, n_mode_pairs: int, couplings: CouplingSet) -> np.ndarray:
    """Eigenvalues of the mapped Hamiltonian restricted to the physical subspace."""
    _, _, projected = _projected(kind, n_mode_pairs, couplings)
    return linalg.eigvalsh(projected)
