"""Per-Trotter-step gate tallies: closed-form counts and measured circuit tallies."""

from dataclasses import asdict, dataclass, fields
from typing import Dict

from qu5it.compiler.ir import CircuitIR, CtrlGivens, CtrlPermute, GivensRot, PhaseDiag, TwoQuditGivens
from qu5it.errors import DomainError


@dataclass(frozen=True)
class ResourceCount:
    """Gate tallies; qu5it gate types first, qubit-backend types last."""

    g_x: int = 0
    g_y: int = 0
    phase: int = 0
    cx_hat: int = 0
    cy_hat: int = 0
    cg: int = 0
    g_xx: int = 0
    g_yy: int = 0
    h: int = 0
    rz: int = 0
    cnot: int = 0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if value < 0:
                raise DomainError(f"resource tally {f.name} must be nonnegative, got {value}")

    def __add__(self, other: "ResourceCount") -> "ResourceCount":
        return ResourceCount(**{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)})

    def scaled(self, factor: int) -> "ResourceCount":
        return ResourceCount(**{f.name: getattr(self, f.name) * factor for f in fields(self)})

    @property
    def qudit_entangling(self) -> int:
        return self.cx_hat + self.cy_hat + self.cg + self.g_xx + self.g_yy

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


ONE_BODY_BLOCK = ResourceCount(g_x=1, phase=2)
PAIR_BLOCKS = {
    # 20 XX products at 2 CX^ + 4 CY^ and 20 YY products at 6 CY^
    "controlled": ResourceCount(cx_hat=40, cy_hat=200, g_x=40, g_y=40),
    "native": ResourceCount(g_xx=20, g_yy=20),
}


def pair_count(omega: int) -> int:
    if omega < 2 or omega % 2:
        raise DomainError(f"omega must be even and at least 2, got {omega}")
    q = omega // 2
    return q * (q - 1) // 2


def count_resources(omega: int, backend: str) -> ResourceCount:
    """
    Closed-form per-step tallies.

    omega/2 one-body blocks [1 G^X, 2 Phase] plus one pair block per qu5it pair:
    [40 CX^, 200 CY^, 40 G^X, 40 G^Y] for the controlled backend or
    [20 G^XX, 20 G^YY] for the native backend.
    """
    if backend not in PAIR_BLOCKS:
        raise DomainError(f"unknown backend {backend!r}, expected one of {sorted(PAIR_BLOCKS)}")
    pairs = pair_count(omega)
    return ONE_BODY_BLOCK.scaled(omega // 2) + PAIR_BLOCKS[backend].scaled(pairs)


def tally_circuit(circuit: CircuitIR) -> ResourceCount:
    """Count the gates actually present in a circuit."""
    counts = dict.fromkeys(["g_x", "g_y", "phase", "cx_hat", "cy_hat", "cg", "g_xx", "g_yy"], 0)
    for gate in circuit.gates:
        if isinstance(gate, PhaseDiag):
            counts["phase"] += 1
        elif isinstance(gate, GivensRot):
            counts["g_x" if gate.kind == "X" else "g_y"] += 1
        elif isinstance(gate, CtrlPermute):
            counts["cx_hat" if gate.kind == "X" else "cy_hat"] += 1
        elif isinstance(gate, CtrlGivens):
            counts["cg"] += 1
        elif isinstance(gate, TwoQuditGivens):
            counts["g_xx" if gate.kind == "XX" else "g_yy"] += 1
    return ResourceCount(**counts)
