"""SO(5) generators in the five-dimensional qu5it representation.

Level ordering is |0>, |1>, |2>, |3>, |4> with particle numbers (0, 2, 2, 2, 4).
"""

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple, Union

import numpy as np

from qu5it.errors import DomainError

SQRT2 = np.sqrt(2.0)

N_DIAG = np.array([0.0, 2.0, 2.0, 2.0, 4.0])
TZ_DIAG = np.array([0.0, -1.0, 0.0, 1.0, 0.0])
PAIRS_DIAG = np.array([0.0, 1.0, 0.0, 1.0, 2.0])
PARITY_DIAG = np.array([1.0, 1.0, -1.0, 1.0, 1.0])


class GeneratorName(str, enum.Enum):
    """Named operators of the qu5it algebra."""
    T_PLUS = "T+"
    T_MINUS = "T-"
    T_Z = "Tz"
    B_UP = "b_up"
    B_DOWN = "b_down"
    B_Z = "b_z"
    B_UP_DAG = "b_up_dag"
    B_DOWN_DAG = "b_down_dag"
    B_Z_DAG = "b_z_dag"
    N = "N"
    N_TILDE_UP = "Nt_up"
    N_TILDE_DOWN = "Nt_down"
    N_TILDE = "Nt"
    OMEGA_5 = "Omega5"
    N_PAIRS = "Npairs"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    name: GeneratorName
    matrix: np.ndarray

    def dagger(self) -> np.ndarray:
        return self.matrix.conj().T


def _unit(i: int, j: int) -> np.ndarray:
    m = np.zeros((5, 5), dtype=np.complex128)
    m[i, j] = 1.0
    return m


@lru_cache(maxsize=1)
def _generator_table() -> Dict[GeneratorName, np.ndarray]:
    t_plus = SQRT2 * (_unit(2, 1) + _unit(3, 2))
    b_up = _unit(0, 3) - _unit(1, 4)
    b_down = _unit(0, 1) - _unit(3, 4)
    b_z = _unit(0, 2) + _unit(2, 4)
    n = np.diag(N_DIAG).astype(np.complex128)
    t_z = np.diag(TZ_DIAG).astype(np.complex128)
    omega5 = (np.trace(n).real / 5.0) * np.eye(5, dtype=np.complex128)

    table = {
        GeneratorName.T_PLUS: t_plus,
        GeneratorName.T_MINUS: t_plus.conj().T,
        GeneratorName.T_Z: t_z,
        GeneratorName.B_UP: b_up,
        GeneratorName.B_DOWN: b_down,
        GeneratorName.B_Z: b_z,
        GeneratorName.B_UP_DAG: b_up.conj().T,
        GeneratorName.B_DOWN_DAG: b_down.conj().T,
        GeneratorName.B_Z_DAG: b_z.conj().T,
        GeneratorName.N: n,
        GeneratorName.N_TILDE_UP: n / 2 + t_z - omega5 / 2,
        GeneratorName.N_TILDE_DOWN: n / 2 - t_z - omega5 / 2,
        GeneratorName.N_TILDE: (n - omega5) / 2,
        GeneratorName.OMEGA_5: omega5,
        GeneratorName.N_PAIRS: np.diag(PAIRS_DIAG).astype(np.complex128),
    }
    for matrix in table.values():
        matrix.setflags(write=False)
    return table


def generator(name: Union[GeneratorName, str]) -> AlgebraElement:
    """
    Look up a named operator.

    Args:
        name: GeneratorName or its string value (e.g. "T+", "b_down")

    Returns:
        AlgebraElement holding a read-only 5x5 matrix
    """
    try:
        key = GeneratorName(name)
    except ValueError:
        raise DomainError(f"unknown generator {name!r}") from None
    return AlgebraElement(key, _generator_table()[key])


def g(name: str) -> np.ndarray:
    return _generator_table()[GeneratorName(name)]


@lru_cache(maxsize=1)
def standard_generators() -> Tuple[np.ndarray, ...]:
    """Hermitian generators T_1..T_10 normalized to Tr(T_a T_b) = 2 delta_ab."""
    t_plus, t_minus = g("T+"), g("T-")
    pairs = [
        (g("b_down_dag"), g("b_down")),
        (g("b_up_dag"), g("b_up")),
        (g("b_z_dag"), g("b_z")),
    ]
    gens = [
        (t_plus + t_minus) / 2,
        (t_plus - t_minus) / 2j,
        g("Tz"),
    ]
    for dag, op in pairs:
        gens.append((dag + op) / SQRT2)
        gens.append((dag - op) / (1j * SQRT2))
    gens.append((g("N") - g("Omega5")) / 2)
    for matrix in gens:
        matrix.setflags(write=False)
    return tuple(gens)


def standard_generator(index: int) -> np.ndarray:
    """T_index for index in 1..10."""
    if not 1 <= index <= 10:
        raise DomainError(f"standard generator index must be in 1..10, got {index}")
    return standard_generators()[index - 1]


@lru_cache(maxsize=1)
def l_generators() -> Dict[Tuple[int, int], np.ndarray]:
    """
    Antisymmetric-index generators L_ij (1 <= i < j <= 5).

    Obtained by inverting T_1 = L12, T_2 = L23, T_3 = L13, T_8 = L24, T_9 = L25,
    T_10 = L54 and the four sqrt(2) mixtures of L14, L15, L34, L35 in T_4..T_7.
    """
    t = (None,) + standard_generators()
    ls = {
        (1, 2): t[1],
        (2, 3): t[2],
        (1, 3): t[3],
        (2, 4): t[8],
        (2, 5): t[9],
        (4, 5): -t[10],
        (1, 5): -(t[4] + t[6]) / SQRT2,
        (3, 4): (t[6] - t[4]) / SQRT2,
        (1, 4): (t[5] + t[7]) / SQRT2,
        (3, 5): (t[7] - t[5]) / SQRT2,
    }
    return ls


def l_generator(i: int, j: int) -> np.ndarray:
    """L_ij with L_ji = -L_ij and L_ii = 0."""
    if i == j:
        return np.zeros((5, 5), dtype=np.complex128)
    if i < j:
        return l_generators()[(i, j)]
    return -l_generators()[(j, i)]


def casimir() -> np.ndarray:
    """Quadratic Casimir sum_a T_a T_a."""
    return sum(t @ t for t in standard_generators())
