"""Seeded shot sampling and histogram estimators."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from qu5it.config import settings
from qu5it.engine.state import StateVector
from qu5it.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass
class ShotHistogram:
    """Measurement counts keyed by basis digit string (qudit 0 first)."""

    counts: Dict[str, int]
    shots: int
    seed: int
    prng: str = field(default_factory=lambda: settings.prng_name)

    def __post_init__(self):
        total = sum(self.counts.values())
        if total != self.shots:
            raise DomainError(f"histogram counts sum to {total}, expected {self.shots}")

    def frequency(self, digits: str) -> float:
        return self.counts.get(digits, 0) / self.shots


def digit_string(index: int, n_qudits: int, levels: int) -> str:
    digits = np.unravel_index(index, (levels,) * n_qudits)
    return "".join(str(int(d)) for d in digits)


def sample(state: StateVector, shots: int, seed: int) -> ShotHistogram:
    """
    Draw ``shots`` computational-basis measurements.

    Args:
        state: State to measure
        shots: Number of draws (>= 1)
        seed: Seed for numpy's PCG64 generator

    Returns:
        ShotHistogram with only the nonzero bins
    """
    if shots < 1:
        raise DomainError(f"shots must be at least 1, got {shots}")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.multinomial(shots, probs)
    counts = {
        digit_string(int(i), state.n_qudits, state.levels): int(draws[i])
        for i in np.flatnonzero(draws)
    }
    logger.debug(f"sampled {shots} shots over {len(counts)} bins (seed {seed})")
    return ShotHistogram(counts=counts, shots=shots, seed=seed)


def survival_from_histogram(histogram: ShotHistogram, digits: Sequence[int]) -> float:
    """Frequency of the initial digit string."""
    return histogram.frequency("".join(str(int(d)) for d in digits))


def diagonal_from_histogram(
    histogram: ShotHistogram,
    per_qudit_diag: Sequence[float]
) -> Tuple[float, float]:
    """
    Shot estimate of a diagonal observable sum_k D(digit_k).

    Returns:
        (mean, standard error of the mean)
    """
    diag = np.asarray(per_qudit_diag, dtype=float)
    values = np.array([sum(diag[int(c)] for c in key) for key in histogram.counts])
    weights = np.array(list(histogram.counts.values()), dtype=float)
    mean = float(weights @ values / histogram.shots)
    if histogram.shots < 2:
        return mean, 0.0
    variance = float(weights @ (values - mean) ** 2) / (histogram.shots - 1)
    return mean, float(np.sqrt(variance / histogram.shots))
