"""Quantum reading of a phase-encoded classical memory.

Compares a coherent-state probe with the quasi-Bell entangled coherent
state probe. The entangled probe is mapped to an orthogonal state by a
pi phase shift on one mode, so a Helstrom receiver reads the bit with
zero error at any finite energy.
"""

from .channels import PhaseShiftChannel, apply_phase_shift, encode_bit
from .coherent import CatSuperposition, cat_overlap, kappa, normalize, overlap
from .detection import (
    BinaryEnsemble,
    DetectionResult,
    Method,
    helstrom_mixed,
    helstrom_pure,
    homodyne_error,
    qfi_pure_phase,
)
from .errors import (
    CrossCheckError,
    DegenerateStateError,
    DomainError,
    InvalidDensityError,
    NumericError,
)
from .fock import (
    DensityMatrix,
    FockVector,
    coherent_to_fock,
    density_from_state,
    inner,
    partial_trace,
    phase_shift_fock,
    tensor,
    truncation_bound,
    von_neumann_entropy,
)
from .quasibell import (
    GramMatrix,
    entanglement_entropy,
    entropy_closed_form,
    gram_matrix,
    make_quasi_bell,
)

__version__ = "0.1.0"
