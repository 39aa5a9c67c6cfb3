"""Two-photon polarization/path simulator with interferometric gate
models and a windowed statistical decoding protocol."""

from polpath.quantum_core import (
    Comp,
    ModeLabel,
    Path,
    PolLabel,
    StateVector,
    apply_5050_splitter,
    apply_bshv,
    apply_pi_combiner,
    apply_polarizer,
    bell_pair,
    inner,
    is_entangled,
    ket,
    measure_branch_A,
    mode,
    rotate_polarization_basis,
    states_equal_up_to_phase,
)

__all__ = [
    "Comp",
    "ModeLabel",
    "Path",
    "PolLabel",
    "StateVector",
    "apply_5050_splitter",
    "apply_bshv",
    "apply_pi_combiner",
    "apply_polarizer",
    "bell_pair",
    "inner",
    "is_entangled",
    "ket",
    "measure_branch_A",
    "mode",
    "rotate_polarization_basis",
    "states_equal_up_to_phase",
]

__version__ = "0.1.0"
