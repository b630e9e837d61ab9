"""Leading-order Trotter circuits for the Agassi Hamiltonian."""

import logging
from typing import Dict, Optional

import numpy as np

from qu5it.algebra.so5 import N_DIAG, PAIRS_DIAG, TZ_DIAG
from qu5it.compiler.decompose import decomposition_gates
from qu5it.compiler.ir import CircuitIR, GivensRot, PhaseDiag, TwoQuditGivens, execute
from qu5it.engine.state import StateVector, expect_diagonal, swap_qudits
from qu5it.errors import DomainError
from qu5it.model.couplings import ModelInstance
from qu5it.model.hamiltonian import two_body_terms
from qu5it.model.sectors import particle_number_diagonal, sector_of

logger = logging.getLogger(__name__)

BACKENDS = ("native", "controlled")
ORDERING_TAG = "qudit-asc:Npairs,X13,Tz|pair-asc:V,g|XX,YY|rs-lex"


def _check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise DomainError(f"unknown backend {backend!r}, expected one of {BACKENDS}")
    return backend


def trotter_step(
    model: ModelInstance,
    dt: float,
    backend: str = "native",
    expanded: bool = False
) -> CircuitIR:
    """
    One leading-order Trotter step U2(dt) U1(dt).

    Per qu5it, in application order: exp(i dt g Npairs), exp(i dt (V+g) X13),
    exp(-i dt eps Tz). Then every pair i < j in ascending order receives its
    two-body factors exp(-i dt c G_r (x) G_s) in two_body_terms order, either
    as native two-qudit Givens gates or decomposed into controlled permutations.

    Args:
        model: Model instance
        dt: Step size (> 0)
        backend: "native" or "controlled"
        expanded: Unmerged decomposition frames (controlled backend only)

    Returns:
        CircuitIR with backend, dt and ordering tag in its metadata
    """
    _check_backend(backend)
    if not dt > 0:
        raise DomainError(f"Trotter step must be positive, got {dt}")
    eps, v, g = model.couplings.as_tuple()
    n = model.n_qudits
    circuit = CircuitIR(n, metadata={"backend": backend, "dt": repr(dt), "ordering": ORDERING_TAG})

    for q in range(n):
        circuit.append(PhaseDiag(q, tuple(-dt * g * PAIRS_DIAG)))
        circuit.append(GivensRot("X", (1, 3), -dt * (v + g), q))
        circuit.append(PhaseDiag(q, tuple(dt * eps * TZ_DIAG)))

    terms = two_body_terms(model.couplings)
    for i in range(n):
        for j in range(i + 1, n):
            for term in terms:
                angle = dt * term.coefficient
                if backend == "native":
                    circuit.append(TwoQuditGivens(term.kind, term.left_levels, term.right_levels, angle, (i, j)))
                else:
                    circuit.extend(decomposition_gates(
                        term.kind, term.left_levels, term.right_levels, angle, (i, j), expanded
                    ))
    logger.debug(f"Trotter step omega={model.omega} backend={backend}: {len(circuit)} gates")
    return circuit


def trotter_circuit(model: ModelInstance, t: float, n_trot: int, backend: str = "native") -> CircuitIR:
    """n_trot repetitions of trotter_step(model, t / n_trot)."""
    if n_trot < 1:
        raise DomainError(f"number of Trotter steps must be at least 1, got {n_trot}")
    step = trotter_step(model, t / n_trot, backend)
    circuit = step.repeated(n_trot)
    circuit.metadata["n_trot"] = n_trot
    return circuit


def evolve_trotter(
    model: ModelInstance,
    state: StateVector,
    t: float,
    n_trot: int,
    backend: str = "native"
) -> StateVector:
    """Apply n_trot Trotter steps of size t / n_trot."""
    if t == 0:
        return state.copy()
    step = trotter_step(model, t / n_trot, backend)
    for _ in range(n_trot):
        state = execute(step, state)
    return state


def number_drift(
    model: ModelInstance,
    state: StateVector,
    dt: float,
    backend: str = "native"
) -> Dict[str, float]:
    """
    Particle-number diagnostics of a single Trotter step.

    The amplitude leaving the sector is third order in dt, so drift and
    leakage fall as dt**6.

    Returns:
        before/after <N>, their absolute difference, and the probability found
        in particle-number sectors absent from the input state
    """
    before = expect_diagonal(state, N_DIAG)
    evolved = execute(trotter_step(model, dt, backend), state)
    after = expect_diagonal(evolved, N_DIAG)

    allowed = sector_of(state.amplitudes, state.n_qudits)
    inside = np.isin(particle_number_diagonal(state.n_qudits), allowed)
    leakage = float(evolved.probabilities()[~inside].sum())
    return {"before": before, "after": after, "drift": abs(after - before), "leakage": leakage}


def exchange_deviation(
    model: ModelInstance,
    state: StateVector,
    dt: float,
    i: int,
    j: int,
    evolver: str = "trotter"
) -> float:
    """
    || P_ij U psi - U P_ij psi || for one step of size dt.

    Zero for the exact propagator, which commutes with qu5it exchange.
    """
    if evolver == "trotter":
        step = trotter_step(model, dt)

        def propagate(psi: StateVector) -> StateVector:
            return execute(step, psi)
    elif evolver == "exact":
        from qu5it.oracle.evolution import evolve_exact

        def propagate(psi: StateVector) -> StateVector:
            return evolve_exact(model, psi, dt)
    else:
        raise DomainError(f"evolver must be 'trotter' or 'exact', got {evolver!r}")
    swapped_after = swap_qudits(propagate(state), i, j)
    after_swap = propagate(swap_qudits(state, i, j))
    return float(np.linalg.norm(swapped_after.amplitudes - after_swap.amplitudes))
