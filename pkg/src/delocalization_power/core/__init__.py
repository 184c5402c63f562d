"""
Core module - Domain models, linear algebra primitives, errors, logging.
"""

from .errors import (
    DecompositionError,
    DelocalizationError,
    DimensionError,
    ExtractionError,
    GateFormatError,
    GateSpecError,
    InvariantViolation,
    NonUnitaryError,
    NormalizationError,
)
from .linalg import (
    HADAMARD,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    entanglement_entropy,
    haar_random_unitary,
    joint_diagonalize,
    kron,
    partial_trace,
    phase_aligned_distance,
    random_product_state,
    random_state,
    state_fidelity,
    swap_subsystems,
    trace_distance,
    unitarity_residual,
)
from .logger import get_logger, is_logging_enabled, log_debug
from .models import (
    CLASS_1,
    CLASS_2,
    AncillaBranch,
    AncillaReport,
    BranchOutcome,
    CanonicalForm,
    Classification,
    ClassificationDiagnostics,
    ContrastRow,
    ControlledForm,
    EntanglingPowerResult,
    Gate,
    GateSpec,
    OneWayProtocol,
    OperatorSchmidt,
    PureState,
    SimulationReport,
)

__all__ = [
    "CLASS_1",
    "CLASS_2",
    "HADAMARD",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "AncillaBranch",
    "AncillaReport",
    "BranchOutcome",
    "CanonicalForm",
    "Classification",
    "ClassificationDiagnostics",
    "ContrastRow",
    "ControlledForm",
    "DecompositionError",
    "DelocalizationError",
    "DimensionError",
    "EntanglingPowerResult",
    "ExtractionError",
    "Gate",
    "GateFormatError",
    "GateSpec",
    "GateSpecError",
    "InvariantViolation",
    "NonUnitaryError",
    "NormalizationError",
    "OneWayProtocol",
    "OperatorSchmidt",
    "PureState",
    "SimulationReport",
    "entanglement_entropy",
    "get_logger",
    "haar_random_unitary",
    "is_logging_enabled",
    "joint_diagonalize",
    "kron",
    "log_debug",
    "partial_trace",
    "phase_aligned_distance",
    "random_product_state",
    "random_state",
    "state_fidelity",
    "swap_subsystems",
    "trace_distance",
    "unitarity_residual",
]
