"""Low-lying sector spectra."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import eigsh

from qu5it.config import settings
from qu5it.model.couplings import ModelInstance
from qu5it.model.hamiltonian import sector_hamiltonian
from qu5it.model.sectors import particle_numbers

logger = logging.getLogger(__name__)


@dataclass
class SpectrumResult:
    omega: int
    particle_number: int
    energies: np.ndarray
    sector_dim: int
    truncated: bool

    @property
    def densities(self) -> np.ndarray:
        return self.energies / self.omega


def spectrum(model: ModelInstance, particle_number: int, k: int = 3) -> SpectrumResult:
    """
    Lowest ``k`` eigenvalues of the sector Hamiltonian, ascending, with multiplicity.

    Dense diagonalization up to settings.dense_eigh_limit, Lanczos (eigsh) above.
    When k exceeds the sector dimension the whole spectrum is returned and the
    result is flagged as truncated.
    """
    h = sector_hamiltonian(model, particle_number)
    dim = h.dim
    truncated = k > dim
    count = min(k, dim)
    if dim <= settings.dense_eigh_limit:
        energies = linalg.eigh(h.toarray(), eigvals_only=True, subset_by_index=(0, count - 1))
    else:
        energies = eigsh(h.matrix, k=count, which="SA", tol=settings.krylov_tolerance,
                         return_eigenvectors=False)
    energies = np.sort(np.real(energies))
    if truncated:
        logger.warning(f"⚠️  requested {k} levels but sector N={particle_number} has {dim} states")
    return SpectrumResult(model.omega, particle_number, energies, dim, truncated)


def ground_state(model: ModelInstance, particle_number: int) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Lowest eigenpair of a sector, with the eigenvector embedded in the register.

    The eigenvector phase is fixed so its first nonzero component is real positive.

    Returns:
        (energy, register amplitudes, sector indices)
    """
    h = sector_hamiltonian(model, particle_number)
    energies, vectors = linalg.eigh(h.toarray(), subset_by_index=(0, 0))
    vector = vectors[:, 0]
    lead = vector[np.flatnonzero(np.abs(vector) > 1e-12)[0]]
    vector = vector * (abs(lead) / lead)
    amplitudes = np.zeros(5 ** model.n_qudits, dtype=np.complex128)
    amplitudes[h.basis] = vector
    return float(energies[0]), amplitudes, h.basis


SPECTRUM_HEADER = ("omega", "N", "set", "level", "energy_density")


def spectrum_rows(
    omegas: Sequence[int],
    presets: Sequence[str],
    particle_numbers_by_omega: Optional[Sequence[int]] = None,
    k: int = 3
) -> List[Tuple[int, int, str, int, float]]:
    """
    Rows (omega, N, set, level, energy_density) over a grid of models and sectors.

    Every sector 0, 2, ..., 2*omega is listed unless particle numbers are given;
    requested numbers outside a model's range are skipped.
    """
    rows = []
    for omega in omegas:
        allowed = particle_numbers(omega)
        wanted = allowed if particle_numbers_by_omega is None else [n for n in particle_numbers_by_omega if n in allowed]
        for name in presets:
            model = ModelInstance.from_preset(omega, name)
            for n in wanted:
                result = spectrum(model, n, k)
                for level, density in enumerate(result.densities):
                    rows.append((omega, n, name, level, float(density)))
    return rows
