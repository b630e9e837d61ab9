from qu5it.model.couplings import PRESETS, CouplingSet, ModelInstance, dimensionless, preset
from qu5it.model.hamiltonian import (
    G_LEVEL_PAIRS,
    G_SIGNS,
    V_LEVEL_PAIRS,
    OperatorMatrix,
    TwoBodyTerm,
    full_hamiltonian,
    one_body_h,
    parity_diagonal,
    sector_hamiltonian,
    two_body_h,
    two_body_terms,
)
from qu5it.model.sectors import SectorIndex, enumerate_sector, particle_numbers
from qu5it.model.spectrum import SPECTRUM_HEADER, SpectrumResult, ground_state, spectrum, spectrum_rows
from qu5it.model.states import initial_digits, initial_state
