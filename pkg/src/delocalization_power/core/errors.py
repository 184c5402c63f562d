"""
Exception hierarchy for delocalization-power.

The CLI maps each family to a stable exit code (see ``main.py``).
"""


class DelocalizationError(Exception):
    """Base class for every error raised by the package."""


class GateFormatError(DelocalizationError, ValueError):
    """A gate file or gate spec could not be parsed."""


class GateSpecError(GateFormatError):
    """Unknown gallery name or invalid constructor parameters."""


class InvariantViolation(DelocalizationError, ValueError):
    """A value breaks one of the invariants of its domain type."""


class NonUnitaryError(InvariantViolation):
    """The operator is not unitary within the configured tolerance."""


class DimensionError(InvariantViolation):
    """Operand dimensions are incompatible."""


class NormalizationError(InvariantViolation):
    """A state vector does not have unit norm."""


class ExtractionError(DelocalizationError, ArithmeticError):
    """The controlled form of a gate could not be extracted."""


class DecompositionError(DelocalizationError, ArithmeticError):
    """A numerical factorization (SVD, eigensolver) failed."""
