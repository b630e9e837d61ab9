"""Symbolic qu5it gates, circuits and their line-oriented text form.

Text grammar, one gate per line::

    GATE kind targets controls levels angle

Fields are whitespace separated and ``-`` marks an empty field.

    PHASE     -   q     -        -          p0,p1,p2,p3,p4
    GIVENS    X|Y q     -        i,j        theta
    CGIVENS   X|Y t     c=s/s..  i,j        theta
    CPERM     X|Y t     c=s/s..  p,q        -
    GG        XX|YY q0,q1 -      a,b;m,n    alpha

Lines starting with ``#`` carry metadata as ``# key value``; ``# n_qudits``
is mandatory. Angles are written with ``repr`` so parsing is lossless.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from qu5it.algebra.givens import check_kind, check_levels, exp_givens, givens, permutation_gate
from qu5it.engine.state import DenseGate, StateVector, apply_gate
from qu5it.errors import DomainError

logger = logging.getLogger(__name__)


def _check_qudit(q: int):
    if q < 0:
        raise DomainError(f"qudit index must be nonnegative, got {q}")


def _check_states(states: Sequence[int]) -> Tuple[int, ...]:
    states = tuple(int(s) for s in states)
    if not states or any(not 0 <= s <= 4 for s in states) or len(set(states)) != len(states):
        raise DomainError(f"control states must be distinct levels in 0..4, got {states}")
    return states


@dataclass(frozen=True)
class PhaseDiag:
    """diag(exp(-i phi_0), ..., exp(-i phi_4)) on one qudit."""

    qudit: int
    phases: Tuple[float, ...]

    def __post_init__(self):
        _check_qudit(self.qudit)
        if len(self.phases) != 5:
            raise DomainError(f"PhaseDiag needs 5 angles, got {len(self.phases)}")
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))

    @property
    def qudits(self) -> Tuple[int, ...]:
        return (self.qudit,)

    def inverse(self) -> "PhaseDiag":
        return PhaseDiag(self.qudit, tuple(-p for p in self.phases))


@dataclass(frozen=True)
class GivensRot:
    """exp(-i angle G_ij) on one qudit."""

    kind: str
    levels: Tuple[int, int]
    angle: float
    qudit: int

    def __post_init__(self):
        check_kind(self.kind)
        object.__setattr__(self, "levels", check_levels(*self.levels))
        _check_qudit(self.qudit)

    @property
    def qudits(self) -> Tuple[int, ...]:
        return (self.qudit,)

    def inverse(self) -> "GivensRot":
        return GivensRot(self.kind, self.levels, -self.angle, self.qudit)


@dataclass(frozen=True)
class CtrlGivens:
    """Givens rotation on ``target`` applied when ``control`` is in one of ``control_states``."""

    control: int
    control_states: Tuple[int, ...]
    target: int
    kind: str
    levels: Tuple[int, int]
    angle: float

    def __post_init__(self):
        check_kind(self.kind)
        object.__setattr__(self, "levels", check_levels(*self.levels))
        object.__setattr__(self, "control_states", _check_states(self.control_states))
        _check_qudit(self.control)
        _check_qudit(self.target)
        if self.control == self.target:
            raise DomainError(f"control and target must differ, both are {self.target}")

    @property
    def qudits(self) -> Tuple[int, ...]:
        return (self.control, self.target)

    def inverse(self) -> "CtrlGivens":
        return CtrlGivens(self.control, self.control_states, self.target, self.kind, self.levels, -self.angle)


@dataclass(frozen=True)
class CtrlPermute:
    """
    Controlled X-hat (level swap) or Y-hat on ``target``.

    For Y-hat the level order selects the orientation, so ``levels`` may be
    descending; X-hat levels are ordered.
    """

    control: int
    control_states: Tuple[int, ...]
    target: int
    kind: str
    levels: Tuple[int, int]

    def __post_init__(self):
        check_kind(self.kind)
        object.__setattr__(self, "levels", check_levels(*self.levels, ordered=self.kind == "X"))
        object.__setattr__(self, "control_states", _check_states(self.control_states))
        _check_qudit(self.control)
        _check_qudit(self.target)
        if self.control == self.target:
            raise DomainError(f"control and target must differ, both are {self.target}")

    @property
    def qudits(self) -> Tuple[int, ...]:
        return (self.control, self.target)

    def inverse(self) -> "CtrlPermute":
        # X-hat and Y-hat are Hermitian involutions
        return self


@dataclass(frozen=True)
class TwoQuditGivens:
    """exp(-i angle G_ab (x) G_mn) on an ordered qudit pair, G = X or Y."""

    kind: str
    left_levels: Tuple[int, int]
    right_levels: Tuple[int, int]
    angle: float
    qudit_pair: Tuple[int, int]

    def __post_init__(self):
        if self.kind not in ("XX", "YY"):
            raise DomainError(f"two-qudit Givens kind must be XX or YY, got {self.kind!r}")
        object.__setattr__(self, "left_levels", check_levels(*self.left_levels))
        object.__setattr__(self, "right_levels", check_levels(*self.right_levels))
        pair = tuple(int(q) for q in self.qudit_pair)
        if len(pair) != 2 or pair[0] == pair[1]:
            raise DomainError(f"two-qudit Givens needs two distinct qudits, got {pair}")
        for q in pair:
            _check_qudit(q)
        object.__setattr__(self, "qudit_pair", pair)

    @property
    def qudits(self) -> Tuple[int, ...]:
        return self.qudit_pair

    def inverse(self) -> "TwoQuditGivens":
        return TwoQuditGivens(self.kind, self.left_levels, self.right_levels, -self.angle, self.qudit_pair)


GateOp = Union[PhaseDiag, GivensRot, CtrlGivens, CtrlPermute, TwoQuditGivens]


def _controlled(states: Tuple[int, ...], target_matrix: np.ndarray) -> np.ndarray:
    projector = np.zeros((5, 5))
    for s in states:
        projector[s, s] = 1.0
    return np.kron(projector, target_matrix) + np.kron(np.eye(5) - projector, np.eye(5))


@lru_cache(maxsize=8192)
def gate_matrix(gate: GateOp) -> np.ndarray:
    """Dense unitary of a gate over its qudits, first listed qudit most significant."""
    if isinstance(gate, PhaseDiag):
        matrix = np.diag(np.exp(-1j * np.asarray(gate.phases)))
    elif isinstance(gate, GivensRot):
        matrix = exp_givens(gate.kind, *gate.levels, gate.angle)
    elif isinstance(gate, CtrlGivens):
        matrix = _controlled(gate.control_states, exp_givens(gate.kind, *gate.levels, gate.angle))
    elif isinstance(gate, CtrlPermute):
        matrix = _controlled(gate.control_states, permutation_gate(gate.kind, *gate.levels))
    elif isinstance(gate, TwoQuditGivens):
        kind = gate.kind[0]
        left = givens(kind, *gate.left_levels)
        right = givens(kind, *gate.right_levels)
        product = np.kron(left.matrix, right.matrix)
        projector = np.kron(left.projector, right.projector)
        # (G (x) G)^2 is the projector, so the exponential closes
        matrix = (np.eye(25) - projector + np.cos(gate.angle) * projector
                  - 1j * np.sin(gate.angle) * product)
    else:
        raise DomainError(f"unknown gate {gate!r}")
    matrix = np.asarray(matrix, dtype=np.complex128)
    matrix.setflags(write=False)
    return matrix


def dense_gate(gate: GateOp) -> DenseGate:
    return DenseGate(gate_matrix(gate), gate.qudits)


@dataclass
class CircuitIR:
    """Ordered gate list on ``n_qudits`` qu5its."""

    n_qudits: int
    gates: List[GateOp] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_qudits < 1:
            raise DomainError(f"circuit needs at least one qudit, got {self.n_qudits}")
        for gate in self.gates:
            self._check(gate)

    def _check(self, gate: GateOp):
        for q in gate.qudits:
            if q >= self.n_qudits:
                raise DomainError(f"gate {gate} references qudit {q} of a {self.n_qudits}-qudit circuit")

    def append(self, gate: GateOp) -> "CircuitIR":
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Sequence[GateOp]) -> "CircuitIR":
        for gate in gates:
            self.append(gate)
        return self

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[GateOp]:
        return iter(self.gates)

    def inverse(self) -> "CircuitIR":
        return CircuitIR(
            self.n_qudits,
            [gate.inverse() for gate in reversed(self.gates)],
            {**self.metadata, "inverse": True},
        )

    def compose(self, other: "CircuitIR") -> "CircuitIR":
        """This circuit followed by ``other``."""
        if other.n_qudits != self.n_qudits:
            raise DomainError(f"cannot compose circuits on {self.n_qudits} and {other.n_qudits} qudits")
        return CircuitIR(self.n_qudits, self.gates + other.gates, dict(self.metadata))

    def repeated(self, times: int) -> "CircuitIR":
        return CircuitIR(self.n_qudits, self.gates * times, {**self.metadata, "repetitions": times})


def execute(circuit: CircuitIR, state: StateVector, workers: Optional[int] = None) -> StateVector:
    """Apply the gates in list order."""
    if state.n_qudits != circuit.n_qudits:
        raise DomainError(
            f"circuit on {circuit.n_qudits} qudits applied to a {state.n_qudits}-qudit state"
        )
    for gate in circuit.gates:
        state = apply_gate(state, dense_gate(gate), workers)
    return state


def circuit_unitary(circuit: CircuitIR) -> np.ndarray:
    """Dense unitary of a circuit on at most two qudits (qudit 0 most significant)."""
    if circuit.n_qudits > 2:
        raise DomainError(f"dense circuit unitaries are limited to 2 qudits, got {circuit.n_qudits}")
    dim = 5 ** circuit.n_qudits
    columns = []
    for k in range(dim):
        basis = np.zeros(dim, dtype=np.complex128)
        basis[k] = 1.0
        columns.append(execute(circuit, StateVector(circuit.n_qudits, basis)).amplitudes)
    return np.column_stack(columns)


# -- text form --------------------------------------------------------------

def _fmt_levels(levels: Tuple[int, int]) -> str:
    return f"{levels[0]},{levels[1]}"


def _fmt_controls(control: int, states: Tuple[int, ...]) -> str:
    return f"{control}=" + "/".join(str(s) for s in states)


def gate_to_line(gate: GateOp) -> str:
    if isinstance(gate, PhaseDiag):
        fields = ["PHASE", "-", str(gate.qudit), "-", "-", ",".join(repr(float(p)) for p in gate.phases)]
    elif isinstance(gate, GivensRot):
        fields = ["GIVENS", gate.kind, str(gate.qudit), "-", _fmt_levels(gate.levels), repr(float(gate.angle))]
    elif isinstance(gate, CtrlGivens):
        fields = ["CGIVENS", gate.kind, str(gate.target), _fmt_controls(gate.control, gate.control_states),
                  _fmt_levels(gate.levels), repr(float(gate.angle))]
    elif isinstance(gate, CtrlPermute):
        fields = ["CPERM", gate.kind, str(gate.target), _fmt_controls(gate.control, gate.control_states),
                  _fmt_levels(gate.levels), "-"]
    else:
        fields = ["GG", gate.kind, f"{gate.qudit_pair[0]},{gate.qudit_pair[1]}", "-",
                  f"{_fmt_levels(gate.left_levels)};{_fmt_levels(gate.right_levels)}", repr(float(gate.angle))]
    return " ".join(fields)


def _parse_pair(text: str) -> Tuple[int, int]:
    first, second = text.split(",")
    return int(first), int(second)


def _parse_controls(text: str) -> Tuple[int, Tuple[int, ...]]:
    control, states = text.split("=")
    return int(control), tuple(int(s) for s in states.split("/"))


def gate_from_line(line: str) -> GateOp:
    try:
        name, kind, targets, controls, levels, angle = line.split()
        if name == "PHASE":
            return PhaseDiag(int(targets), tuple(float(p) for p in angle.split(",")))
        if name == "GIVENS":
            return GivensRot(kind, _parse_pair(levels), float(angle), int(targets))
        if name == "CGIVENS":
            control, states = _parse_controls(controls)
            return CtrlGivens(control, states, int(targets), kind, _parse_pair(levels), float(angle))
        if name == "CPERM":
            control, states = _parse_controls(controls)
            return CtrlPermute(control, states, int(targets), kind, _parse_pair(levels))
        if name == "GG":
            left, right = levels.split(";")
            return TwoQuditGivens(kind, _parse_pair(left), _parse_pair(right), float(angle),
                                  _parse_pair(targets))
    except DomainError:
        raise
    except ValueError as e:
        raise DomainError(f"malformed gate line {line!r}: {e}") from None
    raise DomainError(f"unknown gate name in line {line!r}")


def circuit_to_text(circuit: CircuitIR) -> str:
    lines = [f"# n_qudits {circuit.n_qudits}"]
    for key in sorted(circuit.metadata):
        lines.append(f"# {key} {circuit.metadata[key]}")
    lines.extend(gate_to_line(gate) for gate in circuit.gates)
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> CircuitIR:
    n_qudits: Optional[int] = None
    metadata: Dict[str, Any] = {}
    gates: List[GateOp] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(" ")
            if key == "n_qudits":
                n_qudits = int(value)
            else:
                metadata[key] = value
            continue
        gates.append(gate_from_line(line))
    if n_qudits is None:
        raise DomainError("circuit text lacks a '# n_qudits' header")
    return CircuitIR(n_qudits, gates, metadata)
