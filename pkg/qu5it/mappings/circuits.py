"""Clifford diagonalizers for sigma-type Pauli groups and Pauli propagation through them."""

from dataclasses import dataclass
from functools import reduce
from typing import List, Sequence, Tuple

import numpy as np

from qu5it.errors import DomainError
from qu5it.mappings.pauli import PauliSum

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)


@dataclass(frozen=True)
class CliffordGate:
    name: str  # "H" or "CNOT"
    qubits: Tuple[int, ...]  # (target,) or (control, target)

    def __post_init__(self):
        arity = {"H": 1, "CNOT": 2}.get(self.name)
        if arity is None:
            raise DomainError(f"unsupported Clifford gate {self.name!r}")
        if len(self.qubits) != arity or len(set(self.qubits)) != arity:
            raise DomainError(f"{self.name} needs {arity} distinct qubits, got {self.qubits}")


def diagonalizer(support: Sequence[int]) -> List[CliffordGate]:
    """
    Gates K (application order) with K P K^dag diagonal for every X/Y string P
    on ``support`` with an even number of Y letters.

    The second support qubit is the pivot: CNOT(p2 -> p0), CNOT(p1 -> pj) for
    j >= 3, CNOT(p1 -> p2), H(p1). Two-qubit supports use CNOT(p1 -> p0), H(p1);
    a single qubit only needs H.
    """
    p = list(support)
    if len(p) != len(set(p)) or not p:
        raise DomainError(f"support must be a nonempty set of distinct qubits, got {support}")
    if len(p) == 1:
        return [CliffordGate("H", (p[0],))]
    if len(p) == 2:
        return [CliffordGate("CNOT", (p[1], p[0])), CliffordGate("H", (p[1],))]
    gates = [CliffordGate("CNOT", (p[2], p[0]))]
    gates += [CliffordGate("CNOT", (p[1], q)) for q in p[3:]]
    gates += [CliffordGate("CNOT", (p[1], p[2])), CliffordGate("H", (p[1],))]
    return gates


def _bits(letters: str) -> Tuple[List[int], List[int]]:
    x = [1 if ch in "XY" else 0 for ch in letters]
    z = [1 if ch in "ZY" else 0 for ch in letters]
    return x, z


def _letters(x: Sequence[int], z: Sequence[int]) -> str:
    return "".join("IXZY"[xi + 2 * zi] for xi, zi in zip(x, z))


def propagate(letters: str, gates: Sequence[CliffordGate]) -> Tuple[int, str]:
    """
    Conjugate a Pauli string through a Clifford circuit with tableau update rules.

    Returns (sign, letters) with K P K^dag = sign * letters.
    """
    x, z = _bits(letters)
    r = 0
    for gate in gates:
        if max(gate.qubits) >= len(letters):
            raise DomainError(f"gate {gate} acts outside a {len(letters)}-qubit string")
        if gate.name == "H":
            (a,) = gate.qubits
            r ^= x[a] & z[a]
            x[a], z[a] = z[a], x[a]
        else:
            c, t = gate.qubits
            r ^= x[c] & z[t] & (x[t] ^ z[c] ^ 1)
            x[t] ^= x[c]
            z[c] ^= z[t]
    return (-1 if r else 1), _letters(x, z)


def conjugate(pauli_sum: PauliSum, gates: Sequence[CliffordGate]) -> PauliSum:
    out = PauliSum(n_qubits=pauli_sum.n_qubits)
    for letters, coefficient in pauli_sum:
        sign, image = propagate(letters, gates)
        out = out + PauliSum({image: sign * coefficient})
    return out.simplify()


def _one_qubit(matrix: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    ops = [np.eye(2)] * n_qubits
    ops[qubit] = matrix
    return reduce(np.kron, ops)


def _cnot(control: int, target: int, n_qubits: int) -> np.ndarray:
    dim = 1 << n_qubits
    idx = np.arange(dim)
    flipped = np.where((idx >> (n_qubits - 1 - control)) & 1, idx ^ (1 << (n_qubits - 1 - target)), idx)
    u = np.zeros((dim, dim), dtype=np.complex128)
    u[flipped, idx] = 1.0
    return u


def clifford_unitary(gates: Sequence[CliffordGate], n_qubits: int) -> np.ndarray:
    """Dense unitary of a gate list applied left to right."""
    u = np.eye(1 << n_qubits, dtype=np.complex128)
    for gate in gates:
        if gate.name == "H":
            step = _one_qubit(_H, gate.qubits[0], n_qubits)
        else:
            step = _cnot(*gate.qubits, n_qubits)
        u = step @ u
    return u


def off_diagonal_residue(pauli_sum: PauliSum, gates: Sequence[CliffordGate]) -> float:
    """Largest off-diagonal entry of K H K^dag, computed with dense matrices."""
    k = clifford_unitary(gates, pauli_sum.n_qubits)
    m = k @ pauli_sum.to_dense() @ k.conj().T
    return float(np.abs(m - np.diag(np.diag(m))).max())
