"""Coupling constants and model instances."""

from dataclasses import dataclass
from typing import Dict, Tuple

from qu5it.errors import DomainError


@dataclass(frozen=True)
class CouplingSet:
    """Single-particle splitting epsilon, monopole coupling V and pairing coupling g."""

    epsilon: float
    v: float
    g: float

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.epsilon, self.v, self.g)


PRESETS: Dict[str, CouplingSet] = {
    "set-0": CouplingSet(epsilon=1.0, v=0.0, g=0.0),
    "set-1": CouplingSet(epsilon=1.0, v=0.5, g=0.5),
    "set-2": CouplingSet(epsilon=1.0, v=1.5, g=0.5),
    "set-3": CouplingSet(epsilon=1.0, v=0.5, g=1.5),
    "set-4": CouplingSet(epsilon=1.0, v=1.5, g=1.5),
}


def preset(name: str) -> CouplingSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise DomainError(f"unknown coupling preset {name!r}, expected one of {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class ModelInstance:
    """Agassi model on ``omega`` modes, i.e. omega/2 qu5its."""

    omega: int
    couplings: CouplingSet

    def __post_init__(self):
        if self.omega < 2 or self.omega % 2:
            raise DomainError(f"omega must be even and at least 2, got {self.omega}")

    @property
    def n_qudits(self) -> int:
        return self.omega // 2

    @classmethod
    def from_preset(cls, omega: int, name: str) -> "ModelInstance":
        return cls(omega, preset(name))


def dimensionless(model: ModelInstance) -> Tuple[float, float, float]:
    """
    Dimensionless couplings (v_bar, g_bar, g0_bar).

    v_bar = (omega-1) V/eps, g_bar = (omega-1) g/eps, g0_bar = g_bar + V/eps.
    """
    eps, v, g = model.couplings.as_tuple()
    if eps == 0:
        raise DomainError("dimensionless couplings need a nonzero epsilon")
    v_bar = (model.omega - 1) * v / eps
    g_bar = (model.omega - 1) * g / eps
    return v_bar, g_bar, g_bar + v / eps
