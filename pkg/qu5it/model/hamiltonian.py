"""Agassi Hamiltonian: one-body block, two-body Givens terms and sparse assembly.

The one-body block per qu5it is eps*Tz - (V+g)*X13 - g*Npairs. The two-body
block on a qu5it pair is

    -V (T+ (x) T+ + T- (x) T-) - g (B^dag (x) B + B (x) B^dag),
    B = b_up + b_down,

rewritten as sums of X(x)X and Y(x)Y Givens products: the V sector runs over
level pairs {12, 23} with coefficient -V (XX) and +V (YY); the g sector runs
over {01, 03, 14, 34} with coefficient -(g/2) sigma_r sigma_s for both kinds,
where sigma(14) = sigma(34) = -1.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from scipy import sparse

from qu5it.algebra.givens import givens
from qu5it.algebra.so5 import N_DIAG, PAIRS_DIAG, PARITY_DIAG, TZ_DIAG
from qu5it.config import settings
from qu5it.engine.state import total_diagonal
from qu5it.errors import DomainError, Qu5itError, ResourceLimitError
from qu5it.model.couplings import CouplingSet, ModelInstance
from qu5it.model.sectors import enumerate_sector

logger = logging.getLogger(__name__)

LevelPair = Tuple[int, int]

V_LEVEL_PAIRS: Tuple[LevelPair, ...] = ((1, 2), (2, 3))
G_LEVEL_PAIRS: Tuple[LevelPair, ...] = ((0, 1), (0, 3), (1, 4), (3, 4))
G_SIGNS: Dict[LevelPair, int] = {(0, 1): 1, (0, 3): 1, (1, 4): -1, (3, 4): -1}


@dataclass(frozen=True)
class TwoBodyTerm:
    """coefficient * G_left (x) G_right with G = X or Y on both qu5its."""

    coefficient: float
    kind: str  # "XX" or "YY"
    left_levels: LevelPair
    right_levels: LevelPair
    sign_left: int = 1
    sign_right: int = 1
    sector: str = "V"

    @property
    def single_kind(self) -> str:
        return self.kind[0]

    def factors(self) -> Tuple[np.ndarray, np.ndarray]:
        return (
            givens(self.single_kind, *self.left_levels).matrix,
            givens(self.single_kind, *self.right_levels).matrix,
        )

    def matrix(self) -> np.ndarray:
        left, right = self.factors()
        return self.coefficient * np.kron(left, right)


def one_body_h(couplings: CouplingSet) -> np.ndarray:
    """5x5 single mode-pair Hamiltonian eps*Tz - (V+g)*X13 - g*Npairs."""
    eps, v, g = couplings.as_tuple()
    h = np.diag(eps * TZ_DIAG - g * PAIRS_DIAG).astype(np.complex128)
    h = h - (v + g) * givens("X", 1, 3).matrix
    return h


def two_body_terms(
    couplings: CouplingSet,
    g_signs: Optional[Dict[LevelPair, int]] = None
) -> List[TwoBodyTerm]:
    """
    Givens-product terms of the pair interaction in canonical order.

    V sector before g sector; within a sector all XX terms, then all YY terms,
    each in lexicographic (r, s) order. A sector with a zero coupling is omitted.

    Args:
        couplings: Model couplings
        g_signs: Alternate per-level-pair sign map for the g sector

    Returns:
        8 V-sector and 32 g-sector terms when both couplings are nonzero
    """
    signs = dict(G_SIGNS if g_signs is None else g_signs)
    terms = []
    if couplings.v != 0:
        for kind, coefficient in (("XX", -couplings.v), ("YY", couplings.v)):
            for r in V_LEVEL_PAIRS:
                for s in V_LEVEL_PAIRS:
                    terms.append(TwoBodyTerm(coefficient, kind, r, s, sector="V"))
    if couplings.g != 0:
        for kind in ("XX", "YY"):
            for r in G_LEVEL_PAIRS:
                for s in G_LEVEL_PAIRS:
                    sign_r, sign_s = signs[r], signs[s]
                    terms.append(TwoBodyTerm(
                        -0.5 * couplings.g * sign_r * sign_s, kind, r, s, sign_r, sign_s, sector="g"
                    ))
    return terms


def two_body_h(couplings: CouplingSet, g_signs: Optional[Dict[LevelPair, int]] = None) -> np.ndarray:
    """Dense 25x25 pair interaction summed from its Givens terms."""
    h = np.zeros((25, 25), dtype=np.complex128)
    for term in two_body_terms(couplings, g_signs):
        h += term.matrix()
    return h


@dataclass(eq=False)
class OperatorMatrix:
    """Sparse Hermitian operator on the full register or on one sector basis."""

    matrix: sparse.csr_matrix
    n_qudits: int
    basis: Optional[np.ndarray] = None  # register indices, None for the full space

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def hermiticity_deviation(self) -> float:
        diff = self.matrix - self.matrix.conj().T
        return float(np.abs(diff.data).max()) if diff.nnz else 0.0

    def restrict(self, indices: np.ndarray) -> "OperatorMatrix":
        """Block of a full-space operator on the given register indices."""
        if self.basis is not None:
            raise DomainError("only full-space operators can be restricted")
        block = self.matrix[indices][:, indices].tocsr()
        return OperatorMatrix(block, self.n_qudits, np.asarray(indices))

    def sector_leakage(self) -> float:
        """Largest entry coupling different particle numbers."""
        n_total = total_diagonal(self.n_qudits, N_DIAG)
        if self.basis is not None:
            n_total = n_total[self.basis]
        coo = self.matrix.tocoo()
        mask = n_total[coo.row] != n_total[coo.col]
        return float(np.abs(coo.data[mask]).max()) if mask.any() else 0.0


def parity_diagonal(n_qudits: int) -> np.ndarray:
    """Product of per-digit parities (1, 1, -1, 1, 1) over the register."""
    parity = np.ones(1)
    for _ in range(n_qudits):
        parity = np.multiply.outer(parity, PARITY_DIAG).ravel()
    return parity


class _SectorDigits:
    """Lazily computed digit columns of a sorted index basis."""

    def __init__(self, basis: np.ndarray, n_qudits: int):
        self.basis = basis
        self.strides = [5 ** (n_qudits - 1 - k) for k in range(n_qudits)]
        self._cache: Dict[int, np.ndarray] = {}

    def __getitem__(self, k: int) -> np.ndarray:
        if k not in self._cache:
            self._cache[k] = ((self.basis // self.strides[k]) % 5).astype(np.int8)
        return self._cache[k]


def _entries(matrix: np.ndarray) -> Iterator[Tuple[int, int, complex]]:
    rows, cols = np.nonzero(matrix)
    for p, q in zip(rows, cols):
        yield int(p), int(q), complex(matrix[p, q])


def assemble(
    model: ModelInstance,
    basis: np.ndarray,
    g_signs: Optional[Dict[LevelPair, int]] = None
) -> sparse.csr_matrix:
    """
    Build H restricted to a sorted list of register indices.

    Every one- and two-body term is applied to the basis directly; images that
    fall outside the basis are dropped. For a particle-number sector this is
    exact because the full two-body sum conserves N even though single Givens
    products do not.
    """
    n = model.n_qudits
    basis = np.asarray(basis, dtype=np.int64)
    digits = _SectorDigits(basis, n)
    positions = np.arange(basis.size)
    eps, v, g = model.couplings.as_tuple()

    rows: List[np.ndarray] = []
    cols: List[np.ndarray] = []
    vals: List[np.ndarray] = []

    def emit(old: np.ndarray, new: np.ndarray, value: complex):
        where = np.searchsorted(basis, new)
        where = np.minimum(where, basis.size - 1)
        keep = basis[where] == new
        rows.append(where[keep])
        cols.append(old[keep])
        vals.append(np.full(int(keep.sum()), value, dtype=np.complex128))

    one_diag = eps * TZ_DIAG - g * PAIRS_DIAG
    diag = np.zeros(basis.size)
    for k in range(n):
        diag += one_diag[digits[k]]
        if v + g != 0:
            for src, dst in ((1, 3), (3, 1)):
                mask = digits[k] == src
                emit(positions[mask], basis[mask] + (dst - src) * digits.strides[k], -(v + g))
    rows.append(positions)
    cols.append(positions)
    vals.append(diag.astype(np.complex128))

    terms = two_body_terms(model.couplings, g_signs)
    for i in range(n):
        for j in range(i + 1, n):
            for term in terms:
                left, right = term.factors()
                for p, q, a in _entries(left):
                    mask_left = digits[i] == q
                    for r, s, b in _entries(right):
                        mask = mask_left & (digits[j] == s)
                        shift = (p - q) * digits.strides[i] + (r - s) * digits.strides[j]
                        emit(positions[mask], basis[mask] + shift, term.coefficient * a * b)

    matrix = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(basis.size, basis.size),
    ).tocsr()
    matrix.sum_duplicates()
    matrix.data[np.abs(matrix.data) < 1e-14] = 0
    matrix.eliminate_zeros()
    matrix.sort_indices()
    return matrix


def _checked(operator: OperatorMatrix) -> OperatorMatrix:
    deviation = operator.hermiticity_deviation()
    if deviation > settings.unitarity_tolerance:
        raise Qu5itError(f"assembled Hamiltonian is not Hermitian (deviation {deviation:.3g})")
    leakage = operator.sector_leakage()
    if leakage > 0:
        raise Qu5itError(f"assembled Hamiltonian couples particle-number sectors ({leakage:.3g})")
    return operator


def full_hamiltonian(
    model: ModelInstance,
    g_signs: Optional[Dict[LevelPair, int]] = None
) -> OperatorMatrix:
    """
    Sparse Hamiltonian on all 5**(omega/2) register states.

    Raises:
        ResourceLimitError: If omega/2 exceeds settings.max_qudits_hamiltonian
    """
    n = model.n_qudits
    if n > settings.max_qudits_hamiltonian:
        raise ResourceLimitError("full Hamiltonian qu5its", n, settings.max_qudits_hamiltonian)
    matrix = assemble(model, np.arange(5 ** n, dtype=np.int64), g_signs)
    logger.debug(f"full Hamiltonian: dim {matrix.shape[0]}, nnz {matrix.nnz}")
    return _checked(OperatorMatrix(matrix, n))


def sector_hamiltonian(
    model: ModelInstance,
    particle_number: int,
    g_signs: Optional[Dict[LevelPair, int]] = None
) -> OperatorMatrix:
    """Hamiltonian block of one particle-number sector, assembled on the sector basis."""
    sector = enumerate_sector(model.omega, particle_number)
    if sector.size == 0:
        raise DomainError(f"sector N={particle_number} is empty for omega={model.omega}")
    matrix = assemble(model, sector.indices, g_signs)
    logger.debug(f"sector N={particle_number}: dim {matrix.shape[0]}, nnz {matrix.nnz}")
    return _checked(OperatorMatrix(matrix, model.n_qudits, sector.indices))
