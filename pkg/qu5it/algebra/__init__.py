from qu5it.algebra.so5 import (
    N_DIAG,
    PAIRS_DIAG,
    PARITY_DIAG,
    TZ_DIAG,
    AlgebraElement,
    GeneratorName,
    casimir,
    generator,
    l_generator,
    l_generators,
    standard_generator,
    standard_generators,
)
from qu5it.algebra.givens import GivensOperator, exp_givens, givens, permutation_gate
from qu5it.algebra.commutators import (
    CommutatorReport,
    l_relation_deviation,
    trace_orthonormality_deviation,
    verify_commutators,
)
