"""Dense mixed-radix state-vector simulator with selectable kernels."""

from .statevector import (
    AMPLITUDE_CAP,
    StateVector,
    apply,
    apply_phase_table,
    apply_site_unitary,
    backend_name,
    fourier_matrix,
    peak,
    prepare_basis,
    random_state,
    readout,
    run,
)

__all__ = [
    "AMPLITUDE_CAP",
    "StateVector",
    "apply",
    "apply_phase_table",
    "apply_site_unitary",
    "backend_name",
    "fourier_matrix",
    "peak",
    "prepare_basis",
    "random_state",
    "readout",
    "run",
]
