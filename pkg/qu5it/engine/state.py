"""Dense state vectors over qudit registers and gate application.

Basis ordering is big-endian: the digit string (q0 ... q_{n-1}) maps to the
integer sum_k q_k * d**(n-1-k), so qudit 0 is the most significant digit.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from qu5it.config import settings
from qu5it.errors import DomainError

logger = logging.getLogger(__name__)

LEVELS = 5


class StateVector:
    """Unit-norm complex amplitudes over a register of ``n_qudits`` qudits."""

    def __init__(
        self,
        n_qudits: int,
        amplitudes: np.ndarray,
        levels: int = LEVELS,
        check: bool = True
    ):
        """
        Wrap an amplitude array.

        Args:
            n_qudits: Register size
            amplitudes: Complex array of length levels**n_qudits
            levels: Local dimension of every qudit
            check: Verify length and normalization

        Raises:
            DomainError: If the array has the wrong length or is not normalized
        """
        amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if check:
            if n_qudits < 1:
                raise DomainError(f"register needs at least one qudit, got {n_qudits}")
            if amplitudes.shape != (levels ** n_qudits,):
                raise DomainError(
                    f"expected {levels ** n_qudits} amplitudes for {n_qudits} qudits, "
                    f"got shape {amplitudes.shape}"
                )
            norm = np.linalg.norm(amplitudes)
            if abs(norm - 1.0) > settings.norm_tolerance:
                raise DomainError(f"state is not normalized (norm {norm:.12g})")
        self.n_qudits = n_qudits
        self.levels = levels
        self.amplitudes = amplitudes

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex], levels: int = LEVELS) -> "StateVector":
        """Build a state from a full amplitude list, inferring the register size."""
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        n = int(round(np.log(amplitudes.size) / np.log(levels))) if amplitudes.size > 1 else 0
        if n < 1 or levels ** n != amplitudes.size:
            raise DomainError(f"{amplitudes.size} amplitudes is not a power of {levels}")
        return cls(n, amplitudes, levels)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def copy(self) -> "StateVector":
        return StateVector(self.n_qudits, self.amplitudes.copy(), self.levels, check=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def digits(self, index: int) -> Tuple[int, ...]:
        """Digit string of a basis index."""
        return tuple(int(d) for d in np.unravel_index(index, (self.levels,) * self.n_qudits))

    def __repr__(self) -> str:
        return f"StateVector(n_qudits={self.n_qudits}, levels={self.levels})"


@dataclass(frozen=True, eq=False)
class DenseGate:
    """A unitary acting on one or two qudits of a register."""

    matrix: np.ndarray
    targets: Tuple[int, ...]
    levels: int = LEVELS

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) not in (1, 2):
            raise DomainError(f"gates act on one or two qudits, got targets {targets}")
        if len(set(targets)) != len(targets):
            raise DomainError(f"gate targets must be distinct, got {targets}")
        size = self.levels ** len(targets)
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        if matrix.shape != (size, size):
            raise DomainError(
                f"arity {len(targets)} needs a {size}x{size} matrix, got {matrix.shape}"
            )
        deviation = np.abs(matrix.conj().T @ matrix - np.eye(size)).max()
        if deviation > settings.unitarity_tolerance:
            raise DomainError(f"gate matrix is not unitary (deviation {deviation:.3g})")
        object.__setattr__(self, "matrix", matrix)

    @property
    def arity(self) -> int:
        return len(self.targets)

    def adjoint(self) -> "DenseGate":
        return DenseGate(self.matrix.conj().T, self.targets, self.levels)


@lru_cache(maxsize=256)
def _group_table(n_qudits: int, levels: int, targets: Tuple[int, ...]) -> np.ndarray:
    """Rows of amplitude indices that one gate application mixes together."""
    strides = [levels ** (n_qudits - 1 - q) for q in range(n_qudits)]
    base = np.zeros(1, dtype=np.int64)
    for q in range(n_qudits):
        if q not in targets:
            base = (base[:, None] + np.arange(levels, dtype=np.int64) * strides[q]).ravel()
    offsets = np.zeros(1, dtype=np.int64)
    for q in targets:
        offsets = (offsets[:, None] + np.arange(levels, dtype=np.int64) * strides[q]).ravel()
    table = base[:, None] + offsets[None, :]
    table.setflags(write=False)
    return table


def _apply_rows(source: np.ndarray, dest: np.ndarray, table: np.ndarray, matrix_t: np.ndarray):
    dest[table] = source[table] @ matrix_t


def init_basis_state(n: int, digits: Sequence[int], levels: int = LEVELS) -> StateVector:
    """
    Computational basis state.

    Args:
        n: Register size
        digits: One level per qudit, qudit 0 first

    Returns:
        StateVector with amplitude 1 on the encoded index
    """
    digits = list(digits)
    if len(digits) != n:
        raise DomainError(f"expected {n} digits, got {len(digits)}")
    for d in digits:
        if not 0 <= d < levels:
            raise DomainError(f"digit {d} outside 0..{levels - 1}")
    amplitudes = np.zeros(levels ** n, dtype=np.complex128)
    index = 0
    for d in digits:
        index = index * levels + int(d)
    amplitudes[index] = 1.0
    return StateVector(n, amplitudes, levels)


def apply_gate(state: StateVector, gate: DenseGate, workers: Optional[int] = None) -> StateVector:
    """
    Apply a gate to its targets, identity elsewhere.

    Amplitudes are gathered into rows of ``levels**arity`` entries, multiplied
    by the gate and scattered back. With more than one worker the rows are
    split into disjoint chunks handled by a thread pool.

    Args:
        state: Input state (not modified)
        gate: Gate to apply
        workers: Thread count, defaults to ``settings.engine_workers``

    Returns:
        New StateVector
    """
    if gate.levels != state.levels:
        raise DomainError(f"gate for {gate.levels}-level qudits applied to {state.levels}-level register")
    for t in gate.targets:
        if not 0 <= t < state.n_qudits:
            raise DomainError(f"target {t} outside register of {state.n_qudits} qudits")

    table = _group_table(state.n_qudits, state.levels, gate.targets)
    matrix_t = gate.matrix.T
    out = np.empty_like(state.amplitudes)
    workers = workers or settings.engine_workers
    rows = table.shape[0]
    chunk = max(settings.engine_chunk_min // table.shape[1], 1)

    if workers <= 1 or rows <= chunk:
        _apply_rows(state.amplitudes, out, table, matrix_t)
    else:
        step = max(chunk, -(-rows // workers))
        bounds = range(0, rows, step)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_apply_rows, state.amplitudes, out, table[b:b + step], matrix_t)
                for b in bounds
            ]
            for future in futures:
                future.result()

    return StateVector(state.n_qudits, out, state.levels, check=False)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> with conjugation on ``a``."""
    if a.dim != b.dim or a.levels != b.levels:
        raise DomainError(f"cannot contract states of dimension {a.dim} and {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def trace_distance(a: StateVector, b: StateVector) -> float:
    """
    sqrt(1 - |<a|b>|^2), the largest expectation-value difference between two
    pure states over observables with eigenvalues in [-1, 1], halved.
    """
    overlap = abs(inner_product(a, b)) ** 2
    return float(np.sqrt(max(0.0, 1.0 - overlap)))


def qudit_marginals(state: StateVector) -> np.ndarray:
    """Per-qudit level populations, shape (n_qudits, levels)."""
    probs = state.probabilities().reshape((state.levels,) * state.n_qudits)
    marginals = np.empty((state.n_qudits, state.levels))
    for k in range(state.n_qudits):
        axes = tuple(q for q in range(state.n_qudits) if q != k)
        marginals[k] = probs.sum(axis=axes) if axes else probs
    return marginals


def expect_diagonal(state: StateVector, per_qudit_diag: Sequence[float]) -> float:
    """
    Expectation of sum_k D(digit_k) for a diagonal single-qudit observable D.

    Used for S_z (0,-1,0,1,0), pair number (0,1,0,1,2) and N (0,2,2,2,4).
    """
    diag = np.asarray(per_qudit_diag, dtype=float)
    if diag.shape != (state.levels,):
        raise DomainError(f"diagonal needs {state.levels} entries, got {diag.shape}")
    return float(qudit_marginals(state).sum(axis=0) @ diag)


def total_diagonal(n_qudits: int, per_qudit_diag: Sequence[float], levels: int = LEVELS) -> np.ndarray:
    """Diagonal of sum_k D(digit_k) over the whole register."""
    diag = np.asarray(per_qudit_diag)
    total = np.zeros(1, dtype=diag.dtype)
    for _ in range(n_qudits):
        total = np.add.outer(total, diag).ravel()
    return total


def swap_qudits(state: StateVector, i: int, j: int) -> StateVector:
    """Exchange the roles of qudits ``i`` and ``j``."""
    for q in (i, j):
        if not 0 <= q < state.n_qudits:
            raise DomainError(f"qudit {q} outside register of {state.n_qudits} qudits")
    tensor = state.amplitudes.reshape((state.levels,) * state.n_qudits)
    swapped = np.ascontiguousarray(np.swapaxes(tensor, i, j)).ravel()
    return StateVector(state.n_qudits, swapped, state.levels, check=False)


def product_state(single_qudit_states: Sequence[np.ndarray], levels: int = LEVELS) -> StateVector:
    """Tensor product of per-qudit amplitude vectors, qudit 0 first."""
    amplitudes = np.ones(1, dtype=np.complex128)
    for vector in single_qudit_states:
        amplitudes = np.kron(amplitudes, np.asarray(vector, dtype=np.complex128))
    return StateVector(len(single_qudit_states), amplitudes, levels)
