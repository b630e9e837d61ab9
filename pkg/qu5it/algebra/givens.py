"""Givens operators X_ij, Y_ij on a qu5it and their closed-form exponentials."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from qu5it.errors import DomainError

KINDS = ("X", "Y")


@dataclass(frozen=True, eq=False)
class GivensOperator:
    """X_ij = |i><j| + |j><i| or Y_ij = -i|i><j| + i|j><i| (i < j)."""

    kind: str
    levels: Tuple[int, int]
    matrix: np.ndarray

    @property
    def projector(self) -> np.ndarray:
        p = np.zeros((5, 5), dtype=np.complex128)
        p[self.levels[0], self.levels[0]] = p[self.levels[1], self.levels[1]] = 1.0
        return p


def check_levels(i: int, j: int, ordered: bool = True) -> Tuple[int, int]:
    if not (0 <= i <= 4 and 0 <= j <= 4):
        raise DomainError(f"levels must lie in 0..4, got ({i}, {j})")
    if i == j:
        raise DomainError(f"Givens levels must differ, got ({i}, {j})")
    if ordered and i > j:
        raise DomainError(f"Givens levels must be ordered i < j, got ({i}, {j})")
    return int(i), int(j)


def check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise DomainError(f"Givens kind must be X or Y, got {kind!r}")
    return kind


@lru_cache(maxsize=64)
def _givens_matrix(kind: str, i: int, j: int) -> np.ndarray:
    m = np.zeros((5, 5), dtype=np.complex128)
    if kind == "X":
        m[i, j] = m[j, i] = 1.0
    else:
        m[i, j] = -1j
        m[j, i] = 1j
    m.setflags(write=False)
    return m


def givens(kind: str, i: int, j: int) -> GivensOperator:
    """Exact 5x5 Givens operator on levels (i, j)."""
    check_kind(kind)
    i, j = check_levels(i, j)
    return GivensOperator(kind, (i, j), _givens_matrix(kind, i, j))


def exp_givens(kind: str, i: int, j: int, theta: float) -> np.ndarray:
    """
    exp(-i theta G_ij) in closed form.

    cos(theta) on (i,i) and (j,j); -i sin(theta) on both cross entries for X,
    -sin(theta) at (i,j) and +sin(theta) at (j,i) for Y; 1 elsewhere.
    """
    check_kind(kind)
    i, j = check_levels(i, j)
    if not np.isfinite(theta):
        raise DomainError(f"rotation angle must be finite, got {theta}")
    c, s = np.cos(theta), np.sin(theta)
    u = np.eye(5, dtype=np.complex128)
    u[i, i] = u[j, j] = c
    if kind == "X":
        u[i, j] = u[j, i] = -1j * s
    else:
        u[i, j] = -s
        u[j, i] = s
    return u


def permutation_gate(kind: str, p: int, q: int) -> np.ndarray:
    """
    Permutation-like single-qu5it gate used as a controlled target.

    X-hat swaps levels p and q. Y-hat_pq = i(|p><q| - |q><p|); the order of
    (p, q) selects the orientation. Both act as identity on the other levels.
    """
    check_kind(kind)
    p, q = check_levels(p, q, ordered=False)
    u = np.eye(5, dtype=np.complex128)
    u[p, p] = u[q, q] = 0.0
    if kind == "X":
        u[p, q] = u[q, p] = 1.0
    else:
        u[p, q] = 1j
        u[q, p] = -1j
    return u
