"""Commutation tables of the qu5it SO(5) algebra, stored as data and checked numerically."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from qu5it.algebra.so5 import SQRT2, g, l_generator, standard_generators

logger = logging.getLogger(__name__)

R2 = 1 / SQRT2
I = 1j

LADDER_ORDER = (
    "T+", "T-", "Tz", "b_up", "b_down", "b_z", "b_up_dag", "b_down_dag", "b_z_dag", "N",
)

# [row, column] -> linear combination; cells not listed vanish
LADDER_TABLE: Dict[Tuple[str, str], Dict[str, complex]] = {
    ("T+", "T-"): {"Tz": 2},
    ("T+", "Tz"): {"T+": -1},
    ("T+", "b_up"): {"b_z": -SQRT2},
    ("T+", "b_z"): {"b_down": -SQRT2},
    ("T+", "b_down_dag"): {"b_z_dag": SQRT2},
    ("T+", "b_z_dag"): {"b_up_dag": SQRT2},
    ("T-", "Tz"): {"T-": 1},
    ("T-", "b_down"): {"b_z": -SQRT2},
    ("T-", "b_z"): {"b_up": -SQRT2},
    ("T-", "b_up_dag"): {"b_z_dag": SQRT2},
    ("T-", "b_z_dag"): {"b_down_dag": SQRT2},
    ("Tz", "b_up"): {"b_up": -1},
    ("Tz", "b_down"): {"b_down": 1},
    ("Tz", "b_up_dag"): {"b_up_dag": 1},
    ("Tz", "b_down_dag"): {"b_down_dag": -1},
    ("b_up", "b_up_dag"): {"Nt_up": -1},
    ("b_up", "b_z_dag"): {"T-": -R2},
    ("b_up", "N"): {"b_up": 2},
    ("b_down", "b_down_dag"): {"Nt_down": -1},
    ("b_down", "b_z_dag"): {"T+": -R2},
    ("b_down", "N"): {"b_down": 2},
    ("b_z", "b_up_dag"): {"T+": -R2},
    ("b_z", "b_down_dag"): {"T-": -R2},
    ("b_z", "b_z_dag"): {"Nt": -1},
    ("b_z", "N"): {"b_z": 2},
    ("b_up_dag", "N"): {"b_up_dag": -2},
    ("b_down_dag", "N"): {"b_down_dag": -2},
    ("b_z_dag", "N"): {"b_z_dag": -2},
}

STANDARD_TABLE: Dict[Tuple[int, int], Dict[str, complex]] = {
    (1, 2): {"T3": I},
    (1, 3): {"T2": -I},
    (1, 4): {"T9": I * R2},
    (1, 5): {"T8": -I * R2},
    (1, 6): {"T9": I * R2},
    (1, 7): {"T8": -I * R2},
    (1, 8): {"T5": I * R2, "T7": I * R2},
    (1, 9): {"T4": -I * R2, "T6": -I * R2},
    (2, 3): {"T1": I},
    (2, 4): {"T8": -I * R2},
    (2, 5): {"T9": -I * R2},
    (2, 6): {"T8": I * R2},
    (2, 7): {"T9": I * R2},
    (2, 8): {"T4": I * R2, "T6": -I * R2},
    (2, 9): {"T5": I * R2, "T7": -I * R2},
    (3, 4): {"T5": -I},
    (3, 5): {"T4": I},
    (3, 6): {"T7": I},
    (3, 7): {"T6": -I},
    (4, 5): {"Nt_down": I},
    (4, 8): {"T2": -I * R2},
    (4, 9): {"T1": I * R2},
    (4, 10): {"T5": -I},
    (5, 8): {"T1": -I * R2},
    (5, 9): {"T2": -I * R2},
    (5, 10): {"T4": I},
    (6, 7): {"Nt_up": I},
    (6, 8): {"T2": I * R2},
    (6, 9): {"T1": I * R2},
    (6, 10): {"T7": -I},
    (7, 8): {"T1": -I * R2},
    (7, 9): {"T2": I * R2},
    (7, 10): {"T6": I},
    (8, 9): {"T10": I},
    (8, 10): {"T9": -I},
    (9, 10): {"T8": I},
}


@dataclass
class CommutatorCell:
    table: str
    left: str
    right: str
    deviation: float
    passed: bool


@dataclass
class CommutatorReport:
    """Per-cell deviations of the commutation tables."""

    tolerance: float
    cells: List[CommutatorCell] = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.cells), default=0.0)

    @property
    def failures(self) -> List[CommutatorCell]:
        return [c for c in self.cells if not c.passed]

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def cell(self, table: str, left: str, right: str) -> CommutatorCell:
        for c in self.cells:
            if (c.table, c.left, c.right) == (table, left, right):
                return c
        raise KeyError((table, left, right))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def _standard_lookup(name: str) -> np.ndarray:
    if name.startswith("T"):
        return standard_generators()[int(name[1:]) - 1]
    return g(name)


def _combine(terms: Dict[str, complex], lookup) -> np.ndarray:
    out = np.zeros((5, 5), dtype=np.complex128)
    for name, coefficient in terms.items():
        out = out + coefficient * lookup(name)
    return out


def verify_commutators(tolerance: float = 1e-14) -> CommutatorReport:
    """
    Check every upper-triangle cell of both commutation tables.

    Args:
        tolerance: Largest accepted entrywise deviation

    Returns:
        CommutatorReport with 45 cells per table; failures are recorded, never raised
    """
    report = CommutatorReport(tolerance=tolerance)

    for left, right in itertools.combinations(LADDER_ORDER, 2):
        expected = _combine(LADDER_TABLE.get((left, right), {}), g)
        deviation = float(np.abs(commutator(g(left), g(right)) - expected).max())
        report.cells.append(CommutatorCell("ladder", left, right, deviation, deviation <= tolerance))

    gens = standard_generators()
    for a, b in itertools.combinations(range(1, 11), 2):
        expected = _combine(STANDARD_TABLE.get((a, b), {}), _standard_lookup)
        deviation = float(np.abs(commutator(gens[a - 1], gens[b - 1]) - expected).max())
        report.cells.append(
            CommutatorCell("standard", f"T{a}", f"T{b}", deviation, deviation <= tolerance)
        )

    logger.debug(f"commutator tables: max deviation {report.max_deviation:.3g}")
    return report


def trace_orthonormality_deviation() -> float:
    """max |Tr(T_a T_b) - 2 delta_ab| over all a, b."""
    gens = standard_generators()
    gram = np.array([[np.trace(a @ b) for b in gens] for a in gens])
    return float(np.abs(gram - 2 * np.eye(len(gens))).max())


def l_relation_deviation() -> float:
    """
    max deviation of [L_ij, L_kl] = i(d_jk L_il + d_il L_jk - d_jl L_ik - d_ik L_jl)
    over all index quadruples in 1..5.
    """
    worst = 0.0
    idx = range(1, 6)
    for i, j, k, l in itertools.product(idx, idx, idx, idx):
        if i == j or k == l:
            continue
        lhs = commutator(l_generator(i, j), l_generator(k, l))
        rhs = 1j * (
            (j == k) * l_generator(i, l)
            + (i == l) * l_generator(j, k)
            - (j == l) * l_generator(i, k)
            - (i == k) * l_generator(j, l)
        )
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst
