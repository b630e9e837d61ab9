from qu5it.compiler.ir import (
    CircuitIR,
    CtrlGivens,
    CtrlPermute,
    GateOp,
    GivensRot,
    PhaseDiag,
    TwoQuditGivens,
    circuit_from_text,
    circuit_to_text,
    circuit_unitary,
    execute,
    gate_matrix,
)
from qu5it.compiler.prep import fit_single_angles, fit_two_angles, prep_single, prep_two, prepare
from qu5it.compiler.decompose import decompose_two_qudit_givens, decomposition_gates
from qu5it.compiler.trotter import (
    BACKENDS,
    evolve_trotter,
    exchange_deviation,
    number_drift,
    trotter_circuit,
    trotter_step,
)
from qu5it.compiler.resources import ResourceCount, count_resources, tally_circuit
