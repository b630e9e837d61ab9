from qu5it.mappings.pauli import LadderSum, LadderTerm, PauliSum, PauliTerm
from qu5it.mappings.encodings import (
    Encoding,
    embed_state,
    encoding,
    mapped_hamiltonian,
    operator_image_deviations,
    pajw_hamiltonian,
    physical_leakage,
    physical_spectrum,
    sts_hamiltonian,
    verify_equivalence,
)
from qu5it.mappings.circuits import CliffordGate, diagonalizer, off_diagonal_residue, propagate
from qu5it.mappings.costs import (
    ComparisonRow,
    MappingResources,
    TermCost,
    comparison_table,
    count_pajw,
    count_sts,
    term_costs,
)
