from qu5it.oracle.closed_form import ClosedFormParams, closed_form_params, u1_closed_form
from qu5it.oracle.evolution import (
    ExactEvolver,
    ObservableRow,
    OverlapSpectrum,
    SignDiagnostics,
    eigen_overlaps,
    evolve_exact,
    get_evolver,
    long_time_statistics,
    observable_series,
    sign_diagnostics,
    trotter_series,
)
