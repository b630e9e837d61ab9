"""Particle-number sectors of the qu5it register."""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from qu5it.config import settings
from qu5it.errors import DomainError, ResourceLimitError

logger = logging.getLogger(__name__)

# per-digit particle numbers (0, 2, 2, 2, 4) in units of two particles
_HALF_N = np.array([0, 1, 1, 1, 2], dtype=np.int8)


@dataclass(frozen=True, eq=False)
class SectorIndex:
    omega: int
    particle_number: int
    indices: np.ndarray

    @property
    def size(self) -> int:
        return int(self.indices.size)


@lru_cache(maxsize=4)
def _half_numbers(n_qudits: int) -> np.ndarray:
    totals = np.zeros(1, dtype=np.int8)
    for _ in range(n_qudits):
        totals = np.add.outer(totals, _HALF_N).ravel()
    totals.setflags(write=False)
    return totals


@lru_cache(maxsize=32)
def enumerate_sector(omega: int, particle_number: int) -> SectorIndex:
    """
    All register indices whose digits carry ``particle_number`` particles in total.

    Args:
        omega: Mode count (omega/2 qu5its)
        particle_number: Total N, 0 <= N <= 2*omega

    Returns:
        SectorIndex with strictly increasing indices (empty for odd N)
    """
    if omega < 2 or omega % 2:
        raise DomainError(f"omega must be even and at least 2, got {omega}")
    if not 0 <= particle_number <= 2 * omega:
        raise DomainError(f"particle number {particle_number} outside 0..{2 * omega}")
    n = omega // 2
    if n > settings.max_qudits_enumeration:
        raise ResourceLimitError("sector enumeration qu5its", n, settings.max_qudits_enumeration)
    if particle_number % 2:
        indices = np.zeros(0, dtype=np.int64)
    else:
        indices = np.flatnonzero(_half_numbers(n) == particle_number // 2).astype(np.int64)
    indices.setflags(write=False)
    logger.debug(f"sector omega={omega} N={particle_number}: {indices.size} of {5 ** n} states")
    return SectorIndex(omega, particle_number, indices)


def particle_numbers(omega: int):
    """Even particle numbers 0, 2, ..., 2*omega."""
    return list(range(0, 2 * omega + 1, 2))


def sector_of(amplitudes: np.ndarray, n_qudits: int, tolerance: float = 1e-12):
    """Particle numbers carrying weight above ``tolerance`` in a state."""
    totals = particle_number_diagonal(n_qudits)
    probs = np.abs(amplitudes) ** 2
    return sorted({int(v) for v in np.unique(totals[probs > tolerance])})


def particle_number_diagonal(n_qudits: int) -> np.ndarray:
    """Total particle number of every register index."""
    return 2 * _half_numbers(n_qudits).astype(np.int64)
