from qu5it.engine.state import (
    LEVELS,
    DenseGate,
    StateVector,
    apply_gate,
    expect_diagonal,
    init_basis_state,
    inner_product,
    product_state,
    qudit_marginals,
    swap_qudits,
    total_diagonal,
    trace_distance,
)
from qu5it.engine.sampling import (
    ShotHistogram,
    diagonal_from_histogram,
    sample,
    survival_from_histogram,
)

__all__ = [
    "LEVELS",
    "DenseGate",
    "StateVector",
    "ShotHistogram",
    "apply_gate",
    "diagonal_from_histogram",
    "expect_diagonal",
    "init_basis_state",
    "inner_product",
    "product_state",
    "qudit_marginals",
    "sample",
    "survival_from_histogram",
    "swap_qudits",
    "total_diagonal",
    "trace_distance",
]
