"""
Symbolic gate counts for Trotterized evolution of mapped Hamiltonians.

Ladder strings of a block are grouped by support signature. A group with k
sigma letters, m projector letters and z spectator Z letters is evolved by
one diagonalizer frame and 2**(k-1+m) projector-controlled Z rotations:

    H = 2,  RZ = 2**(k-1+m),
    CNOT = 2(k-1) + 2**(k-1+m) [k >= 2] + 2**m [m >= 1] + 2z

Groups without sigma letters but with a Z letter pivot on that Z: RZ = 2**m,
CNOT = 2**m [m >= 1] + 2(z-1). Pure projector strings are expanded into
Z-strings; a weight-w Z-string costs one RZ and 2(w-1) CNOTs unless some
sigma group's diagonalizer maps it to weight 1, in which case it is folded
into that frame at one RZ.

Other StS level assignments (|4> -> |101>, or a Gray code) change the blocks
by -2 CNOT one-body and +32 CNOT two-body. Only the default assignment is
built here.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from qu5it.compiler.resources import ResourceCount, count_resources, pair_count
from qu5it.errors import DomainError
from qu5it.mappings.circuits import diagonalizer, propagate
from qu5it.mappings.encodings import encoding, one_body_ladder, two_body_ladder
from qu5it.mappings.pauli import LadderSum, PauliSum
from qu5it.model.couplings import CouplingSet

logger = logging.getLogger(__name__)

# Counts are structural; any couplings without accidental cancellations give the same tally.
GENERIC_COUPLINGS = CouplingSet(epsilon=1.0, v=0.5, g=0.25)

MAPPINGS = ("paJW", "StS")

_SWAP_LADDER = str.maketrans("+-", "-+")

Signature = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class TermCost:
    """Cost of one group of commuting terms."""

    label: str
    group: str  # "sigma", "z-pivot" or "z-string"
    h: int
    rz: int
    cnot: int

    def as_count(self) -> ResourceCount:
        return ResourceCount(h=self.h, rz=self.rz, cnot=self.cnot)


def sigma_group_cost(k: int, m: int, z: int) -> Tuple[int, int, int]:
    if k < 1:
        raise DomainError(f"a sigma group needs at least one sigma letter, got {k}")
    rz = 2 ** (k - 1 + m)
    cnot = 2 * (k - 1) + (rz if k >= 2 else 0) + (2 ** m if m >= 1 else 0) + 2 * z
    return 2, rz, cnot


def z_pivot_cost(m: int, z: int) -> Tuple[int, int, int]:
    if z < 1:
        raise DomainError("a Z-pivot group needs at least one Z letter")
    return 0, 2 ** m, (2 ** m if m >= 1 else 0) + 2 * (z - 1)


def z_string_cost(weight: int, folded: bool = False) -> Tuple[int, int, int]:
    if folded or weight == 1:
        return 0, 1, 0
    return 0, 1, 2 * (weight - 1)


def _label(letters: Iterable[str]) -> str:
    return " + ".join(sorted(set(letters))) + " + h.c."


def term_costs(block: LadderSum) -> List[TermCost]:
    """Per-group costs of one block, sigma groups first in signature order."""
    sigma_groups: Dict[Signature, List[str]] = {}
    pivot_groups: Dict[Signature, List[str]] = {}
    diagonal = LadderSum()
    for term in block:
        sig = term.signature
        sigma, projectors, zs = sig
        if sigma:
            sigma_groups.setdefault(sig, []).append(term.letters)
        elif zs and projectors:
            pivot_groups.setdefault(sig, []).append(term.letters)
        else:
            diagonal = diagonal + LadderSum([term])

    rows = []
    for (sigma, projectors, zs), members in sorted(sigma_groups.items()):
        # a term and its adjoint share a signature
        representatives = {min(m, m.translate(_SWAP_LADDER)) for m in members}
        h, rz, cnot = sigma_group_cost(len(sigma), len(projectors), len(zs))
        rows.append(TermCost(_label(representatives), "sigma", h, rz, cnot))
    for (_, projectors, zs), members in sorted(pivot_groups.items()):
        h, rz, cnot = z_pivot_cost(len(projectors), len(zs))
        rows.append(TermCost(" + ".join(sorted(set(members))), "z-pivot", h, rz, cnot))

    frames = [diagonalizer(sigma) for sigma, _, _ in sorted(sigma_groups)]
    z_strings: PauliSum = diagonal.expand() if len(diagonal) else PauliSum()
    for letters, _ in z_strings:
        weight = sum(ch != "I" for ch in letters)
        if weight == 0:
            continue
        folded = weight > 1 and any(_folds(letters, frame) for frame in frames)
        h, rz, cnot = z_string_cost(weight, folded)
        rows.append(TermCost(letters, "z-string", h, rz, cnot))
    return rows


def _folds(letters: str, frame) -> bool:
    _, image = propagate(letters, frame)
    return set(image) <= {"I", "Z"} and sum(ch != "I" for ch in image) == 1


def block_cost(block: LadderSum) -> ResourceCount:
    total = ResourceCount()
    for row in term_costs(block):
        total = total + row.as_count()
    return total


@dataclass(frozen=True)
class MappingResources:
    """Per-Trotter-step H, RZ and CNOT tallies of one qubit mapping."""

    mapping: str
    omega: int
    one_body: ResourceCount
    two_body: ResourceCount

    def __post_init__(self):
        pair_count(self.omega)

    @property
    def total(self) -> ResourceCount:
        q = self.omega // 2
        return self.one_body.scaled(q) + self.two_body.scaled(pair_count(self.omega))

    @property
    def cnot(self) -> int:
        return self.total.cnot

    @property
    def hilbert_dim(self) -> int:
        return 2 ** (self.omega // 2 * encoding(self.mapping).qubits_per_qudit)


@lru_cache(maxsize=None)
def mapping_blocks(mapping: str) -> Tuple[ResourceCount, ResourceCount]:
    """(one-body block, two-body block) costs of a mapping."""
    kind = encoding(mapping).kind
    one = block_cost(one_body_ladder(kind, GENERIC_COUPLINGS))
    two = block_cost(two_body_ladder(kind, GENERIC_COUPLINGS))
    logger.debug(f"{kind} blocks: one-body {one.h}/{one.rz}/{one.cnot}, two-body {two.h}/{two.rz}/{two.cnot}")
    return one, two


def count_mapping(mapping: str, omega: int) -> MappingResources:
    one, two = mapping_blocks(mapping)
    return MappingResources(encoding(mapping).kind, omega, one, two)


def count_pajw(omega: int) -> MappingResources:
    return count_mapping("paJW", omega)


def count_sts(omega: int) -> MappingResources:
    return count_mapping("StS", omega)


@dataclass(frozen=True)
class ComparisonRow:
    omega: int
    mapping: str
    hilbert_dim: int
    entangling: int


def comparison_table(omega_range: Sequence[int], backends: Sequence[str] = ("controlled", "native")) -> List[ComparisonRow]:
    """
    Hilbert-space dimension and per-step entangling gate count per mapping.

    qu5it rows count two-qudit gates of the chosen compiler backends; qubit
    mapping rows count CNOTs.
    """
    rows = []
    for omega in omega_range:
        q = omega // 2
        for backend in backends:
            count = count_resources(omega, backend)
            rows.append(ComparisonRow(omega, f"qu5it-{backend}", 5 ** q, count.qudit_entangling))
        for mapping in MAPPINGS:
            resources = count_mapping(mapping, omega)
            rows.append(ComparisonRow(omega, mapping, resources.hilbert_dim, resources.cnot))
    return rows
