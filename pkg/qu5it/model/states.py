"""Tensor-product initial states of the qu5it register."""

from typing import List

from qu5it.engine.state import StateVector, init_basis_state
from qu5it.errors import DomainError


def initial_digits(omega: int, label: str) -> List[int]:
    """Digits of state A (all |1>) or state B (|4>..|4>|0>..|0>)."""
    if omega < 2 or omega % 2:
        raise DomainError(f"omega must be even and at least 2, got {omega}")
    n = omega // 2
    if label == "A":
        return [1] * n
    if label == "B":
        if omega % 4:
            raise DomainError(f"state B needs omega divisible by 4, got {omega}")
        return [4] * (n // 2) + [0] * (n // 2)
    raise DomainError(f"initial state label must be 'A' or 'B', got {label!r}")


def initial_state(omega: int, label: str) -> StateVector:
    digits = initial_digits(omega, label)
    return init_basis_state(len(digits), digits)
