"""Closed-form propagator of a single qu5it."""

from dataclasses import dataclass

import numpy as np

from qu5it.model.couplings import CouplingSet


@dataclass(frozen=True)
class ClosedFormParams:
    """alpha = sqrt(eps^2 + (g+V)^2), beta = eps/alpha, gamma = (g+V)/alpha."""

    alpha: float
    beta: float
    gamma: float

    def a(self, t: float) -> float:
        return float(np.cos(self.alpha * t))

    def b(self, t: float) -> float:
        return float(self.beta * np.sin(self.alpha * t))

    def c(self, t: float) -> float:
        return float(self.gamma * np.sin(self.alpha * t))

    def survival(self, t: float) -> float:
        """|<1|U(t)|1>|^2 = a^2 + b^2."""
        return self.a(t) ** 2 + self.b(t) ** 2

    @property
    def min_survival(self) -> float:
        return self.beta ** 2


def closed_form_params(couplings: CouplingSet) -> ClosedFormParams:
    eps, v, g = couplings.as_tuple()
    alpha = float(np.hypot(eps, g + v))
    if alpha == 0:
        return ClosedFormParams(0.0, 0.0, 0.0)
    return ClosedFormParams(alpha, eps / alpha, (g + v) / alpha)


def u1_closed_form(couplings: CouplingSet, t: float) -> np.ndarray:
    """
    exp(-i t H1) for the one-qu5it Hamiltonian.

    Levels 0 and 2 are untouched, level 4 picks up exp(2igt) and the {1, 3}
    block is exp(igt) [[a + ib, ic], [ic, a - ib]].
    """
    p = closed_form_params(couplings)
    g = couplings.g
    phase = np.exp(1j * g * t)
    a, b, c = p.a(t), p.b(t), p.c(t)
    u = np.eye(5, dtype=np.complex128)
    u[1, 1] = phase * (a + 1j * b)
    u[3, 3] = phase * (a - 1j * b)
    u[1, 3] = u[3, 1] = phase * 1j * c
    u[4, 4] = np.exp(2j * g * t)
    return u
