"""Exact time evolution, eigenstate overlaps and observable time series."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import expm_multiply

from qu5it.algebra.so5 import N_DIAG, PAIRS_DIAG, TZ_DIAG
from qu5it.compiler.trotter import evolve_trotter
from qu5it.config import settings
from qu5it.engine.state import StateVector, expect_diagonal, inner_product, total_diagonal
from qu5it.errors import DomainError, ResourceLimitError
from qu5it.model.couplings import ModelInstance
from qu5it.model.hamiltonian import full_hamiltonian, sector_hamiltonian
from qu5it.model.sectors import sector_of

logger = logging.getLogger(__name__)


class _SectorBlock:
    """Sector Hamiltonian with either a dense eigendecomposition or a sparse matrix for Krylov steps."""

    def __init__(self, model: ModelInstance, particle_number: int):
        operator = sector_hamiltonian(model, particle_number)
        self.basis = operator.basis
        self.dim = operator.dim
        self.energies: Optional[np.ndarray] = None
        self.vectors: Optional[np.ndarray] = None
        self.matrix = operator.matrix
        if self.dim <= settings.dense_eigh_limit:
            self.energies, self.vectors = linalg.eigh(operator.toarray())
            logger.debug(f"sector N={particle_number}: dense eigendecomposition of dim {self.dim}")
        else:
            logger.debug(f"sector N={particle_number}: Krylov propagation at dim {self.dim}")

    @property
    def dense(self) -> bool:
        return self.vectors is not None

    def propagate(self, psi: np.ndarray, t: float) -> np.ndarray:
        if self.dense:
            coefficients = self.vectors.conj().T @ psi
            return self.vectors @ (np.exp(-1j * self.energies * t) * coefficients)
        return expm_multiply(-1j * t * self.matrix, psi, traceA=0.0)


class ExactEvolver:
    """
    exp(-itH) applied sector by sector, with per-sector decompositions cached.

    States spanning several particle-number sectors are accepted up to
    settings.max_qudits_full_space qu5its; beyond that the state must live in
    one sector.
    """

    def __init__(self, model: ModelInstance):
        self.model = model
        self._blocks: Dict[int, _SectorBlock] = {}

    def block(self, particle_number: int) -> _SectorBlock:
        if particle_number not in self._blocks:
            self._blocks[particle_number] = _SectorBlock(self.model, particle_number)
        return self._blocks[particle_number]

    def _sectors(self, state: StateVector) -> List[int]:
        if state.n_qudits != self.model.n_qudits:
            raise DomainError(
                f"state has {state.n_qudits} qudits, model needs {self.model.n_qudits}"
            )
        sectors = sector_of(state.amplitudes, state.n_qudits, tolerance=0.0)
        if len(sectors) > 1 and state.n_qudits > settings.max_qudits_full_space:
            raise ResourceLimitError(
                "multi-sector exact evolution qu5its", state.n_qudits, settings.max_qudits_full_space
            )
        return sectors

    def evolve(self, state: StateVector, t: float) -> StateVector:
        out = np.zeros_like(state.amplitudes)
        for n in self._sectors(state):
            block = self.block(n)
            out[block.basis] = block.propagate(state.amplitudes[block.basis], t)
        return StateVector(state.n_qudits, out, check=False)

    def evolve_many(self, state: StateVector, times: Sequence[float]) -> List[StateVector]:
        return [self.evolve(state, t) for t in times]


@lru_cache(maxsize=16)
def get_evolver(model: ModelInstance) -> ExactEvolver:
    return ExactEvolver(model)


def evolve_exact(model: ModelInstance, state: StateVector, t: float, method: str = "auto") -> StateVector:
    """
    e^{-itH}|psi>.

    Args:
        model: Model instance
        state: Register state of omega/2 qu5its
        t: Time
        method: "auto" (sector eigendecomposition or Krylov) or "full"
            (Krylov on the full sparse Hamiltonian, an independent path)

    Raises:
        ResourceLimitError: If the state spans several sectors on a register
            above the full-space limit, or "full" is requested there
    """
    if method == "auto":
        return get_evolver(model).evolve(state, t)
    if method == "full":
        if model.n_qudits > settings.max_qudits_full_space:
            raise ResourceLimitError("full-space exact evolution qu5its", model.n_qudits,
                                     settings.max_qudits_full_space)
        h = full_hamiltonian(model).matrix
        amplitudes = expm_multiply(-1j * t * h, state.amplitudes, traceA=0.0)
        return StateVector(state.n_qudits, amplitudes, check=False)
    raise DomainError(f"unknown exact evolution method {method!r}")


@dataclass
class OverlapSpectrum:
    """Eigen-energies with the summed squared overlap of a state on each level."""

    energies: np.ndarray
    overlaps: np.ndarray

    @property
    def largest(self) -> float:
        return float(self.overlaps.max())

    @property
    def count(self) -> int:
        return int(self.overlaps.size)

    @property
    def total(self) -> float:
        return float(self.overlaps.sum())

    def by_overlap(self) -> List[Tuple[float, float]]:
        order = np.argsort(-self.overlaps, kind="stable")
        return [(float(self.energies[i]), float(self.overlaps[i])) for i in order]


def eigen_overlaps(
    model: ModelInstance,
    state0: StateVector,
    tolerance: float = 1e-12,
    degeneracy: float = 1e-9
) -> OverlapSpectrum:
    """
    |<E|psi0>|^2 summed over each (possibly degenerate) energy level.

    Levels with overlap at or below ``tolerance`` are dropped; the result is
    sorted by energy.
    """
    evolver = get_evolver(model)
    energies: List[float] = []
    overlaps: List[float] = []
    for n in evolver._sectors(state0):
        block = evolver.block(n)
        if not block.dense:
            raise ResourceLimitError("eigen-overlap sector dimension", block.dim, settings.dense_eigh_limit)
        weights = np.abs(block.vectors.conj().T @ state0.amplitudes[block.basis]) ** 2
        start = 0
        for k in range(1, block.dim + 1):
            if k == block.dim or block.energies[k] - block.energies[start] > degeneracy:
                energies.append(float(block.energies[start:k].mean()))
                overlaps.append(float(weights[start:k].sum()))
                start = k
    energies_arr = np.array(energies)
    overlaps_arr = np.array(overlaps)
    keep = overlaps_arr > tolerance
    order = np.argsort(energies_arr[keep], kind="stable")
    return OverlapSpectrum(energies_arr[keep][order], overlaps_arr[keep][order])


@dataclass
class ObservableRow:
    t: float
    survival: float
    pairs: float
    sz: float
    n: float
    evolver: str = "exact"
    n_trot: int = 0
    shots: int = 0


def observables(state0: StateVector, state: StateVector, t: float, **labels) -> ObservableRow:
    return ObservableRow(
        t=float(t),
        survival=abs(inner_product(state0, state)) ** 2,
        pairs=expect_diagonal(state, PAIRS_DIAG),
        sz=expect_diagonal(state, TZ_DIAG),
        n=expect_diagonal(state, N_DIAG),
        **labels,
    )


def observable_series(
    model: ModelInstance,
    state0: StateVector,
    t_grid: Sequence[float],
    evolver: str = "exact",
    n_trot: Optional[int] = None,
    backend: str = "native"
) -> List[ObservableRow]:
    """
    Survival probability, pair number, S_z and N along a time grid.

    The Trotter evolver restarts from ``state0`` at every grid point and takes
    n_trot steps of size t / n_trot.
    """
    rows = []
    if evolver == "exact":
        exact = get_evolver(model)
        for t in t_grid:
            rows.append(observables(state0, exact.evolve(state0, t), t))
    elif evolver == "trotter":
        if not n_trot or n_trot < 1:
            raise DomainError("the Trotter evolver needs n_trot >= 1")
        for t in t_grid:
            state = evolve_trotter(model, state0, t, n_trot, backend)
            rows.append(observables(state0, state, t, evolver="trotter", n_trot=n_trot))
    else:
        raise DomainError(f"evolver must be 'exact' or 'trotter', got {evolver!r}")
    return rows


def trotter_series(
    model: ModelInstance,
    state0: StateVector,
    t_grid: Sequence[float],
    n_trot: int,
    backend: str = "native"
) -> List[ObservableRow]:
    return observable_series(model, state0, t_grid, "trotter", n_trot, backend)


def long_time_statistics(rows: Sequence[ObservableRow], tail_fraction: float = 0.5) -> Dict[str, Tuple[float, float]]:
    """Mean and variance of each observable over the trailing part of a series."""
    if not 0 < tail_fraction <= 1:
        raise DomainError(f"tail fraction must lie in (0, 1], got {tail_fraction}")
    tail = list(rows)[int(len(rows) * (1 - tail_fraction)):]
    stats = {}
    for name in ("survival", "pairs", "sz", "n"):
        values = np.array([getattr(row, name) for row in tail])
        stats[name] = (float(values.mean()), float(values.var()))
    return stats


@dataclass
class SignDiagnostics:
    """Probability and spin densities of a state in the computational basis."""

    probabilities: np.ndarray
    spin_densities: np.ndarray
    mean: float
    std: float
    sz: float


def sign_diagnostics(state: StateVector, threshold: float = 1e-12) -> SignDiagnostics:
    """
    Sorted nonzero |<i|psi>|^2 and <psi|i><i|S_z|psi> densities.

    The spin-density list keeps entries with magnitude above ``threshold``;
    its mean and population standard deviation are reported with <S_z>.
    """
    probs = state.probabilities()
    sz_diag = total_diagonal(state.n_qudits, TZ_DIAG, state.levels)
    densities = probs * sz_diag
    nonzero_probs = np.sort(probs[probs > threshold])[::-1]
    nonzero_densities = np.sort(densities[np.abs(densities) > threshold])
    mean = float(nonzero_densities.mean()) if nonzero_densities.size else 0.0
    std = float(nonzero_densities.std()) if nonzero_densities.size else 0.0
    return SignDiagnostics(
        probabilities=nonzero_probs,
        spin_densities=nonzero_densities,
        mean=mean,
        std=std,
        sz=float(densities.sum()),
    )
