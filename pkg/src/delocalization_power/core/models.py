"""
Data models for delocalization-power.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .errors import DimensionError, InvariantViolation, NonUnitaryError, NormalizationError
from .linalg import (
    TOL_NORM,
    TOL_UNITARY,
    interaction_unitary,
    kron,
    phase_aligned_distance,
    unitarity_residual,
)

CLASS_1 = "Class1"
CLASS_2 = "Class2"

Block = Tuple[np.ndarray, np.ndarray]


def _frozen_array(values, dtype=complex) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Gate:
    """A two-qudit unitary acting on H_A ⊗ H_B.

    Attributes:
        d: Local dimension of each qudit.
        matrix: The d²×d² unitary, composite index ``i_A * d + i_B``.
        name: Optional label (gallery spec or file name).
        tol_unitary: Tolerance of the unitarity check done at construction.
    """

    d: int
    matrix: np.ndarray = field(repr=False)
    name: Optional[str] = None
    tol_unitary: float = field(default=TOL_UNITARY, repr=False, compare=False)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DimensionError(f"local dimension must be an integer >= 2, got {self.d}")
        matrix = _frozen_array(self.matrix)
        size = self.d * self.d
        if matrix.shape != (size, size):
            raise DimensionError(
                f"gate with d={self.d} needs a {size}x{size} matrix, got {matrix.shape}"
            )
        if not np.all(np.isfinite(matrix)):
            raise InvariantViolation("gate matrix contains non-finite entries")
        residual = unitarity_residual(matrix)
        if residual > self.tol_unitary:
            raise NonUnitaryError(
                f"gate is not unitary: residual {residual:.3e} > {self.tol_unitary:.1e}"
            )
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.d * self.d


@dataclass(frozen=True)
class PureState:
    """Unit vector of a single- or multi-qudit system."""

    amplitudes: np.ndarray
    tol_norm: float = field(default=TOL_NORM, repr=False, compare=False)

    def __post_init__(self):
        vec = _frozen_array(np.asarray(self.amplitudes).reshape(-1))
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > self.tol_norm:
            raise NormalizationError(f"state norm is {norm:.6g}, expected 1")
        object.__setattr__(self, "amplitudes", vec)

    @classmethod
    def from_vector(cls, values) -> "PureState":
        """Builds a state from an arbitrary nonzero vector, normalizing it."""
        vec = np.asarray(values, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(vec / norm)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass
class OperatorSchmidt:
    """Operator Schmidt decomposition U = Σ_k coeffs[k]·A_k⊗B_k.

    Attributes:
        d: Local dimension.
        coeffs: Nonnegative coefficients in descending order (all d² of them).
        factors_a: Hilbert-Schmidt orthonormal d×d operators on A.
        factors_b: Hilbert-Schmidt orthonormal d×d operators on B.
        rank: Number of coefficients above ``tol_used * coeffs[0]``.
        tol_used: Relative tolerance used for the rank.
    """

    d: int
    coeffs: np.ndarray
    factors_a: List[np.ndarray]
    factors_b: List[np.ndarray]
    rank: int
    tol_used: float

    def reconstruct(self, terms: Optional[int] = None) -> np.ndarray:
        """Σ λ_k A_k⊗B_k over the first ``terms`` pairs (all pairs by default)."""
        count = len(self.coeffs) if terms is None else terms
        size = self.d * self.d
        result = np.zeros((size, size), dtype=complex)
        for coeff, a, b in zip(self.coeffs[:count], self.factors_a, self.factors_b):
            result += coeff * kron(a, b)
        return result


@dataclass
class CanonicalForm:
    """U = e^{iφ}(pre_a⊗pre_b)·exp(iΣθ_jσ^j⊗σ^j)·(post_a⊗post_b) for two qubits."""

    pre_a: np.ndarray
    pre_b: np.ndarray
    post_a: np.ndarray
    post_b: np.ndarray
    theta: Tuple[float, float, float]
    global_phase: float

    def reconstruct(self) -> np.ndarray:
        return (
            np.exp(1j * self.global_phase)
            * kron(self.pre_a, self.pre_b)
            @ interaction_unitary(self.theta)
            @ kron(self.post_a, self.post_b)
        )


@dataclass
class ControlledForm:
    """(u_a⊗u_b)·(Σ_n P^n⊗u^n)·(v_a⊗v_b), control on the A factor.

    Attributes:
        d: Local dimension.
        u_a: Local unitary on A applied after the controlled core.
        u_b: Local unitary on B applied after the controlled core.
        v_a: Local unitary on A applied before the controlled core.
        v_b: Local unitary on B applied before the controlled core.
        blocks: Pairs (projector P^n, target unitary u^n); projectors are
            mutually orthogonal and sum to the identity.
    """

    d: int
    u_a: np.ndarray
    u_b: np.ndarray
    v_a: np.ndarray
    v_b: np.ndarray
    blocks: List[Block]

    def core(self) -> np.ndarray:
        """Σ_n P^n⊗u^n."""
        size = self.d * self.d
        result = np.zeros((size, size), dtype=complex)
        for projector, target in self.blocks:
            result += kron(projector, target)
        return result

    def reconstruct(self) -> np.ndarray:
        return kron(self.u_a, self.u_b) @ self.core() @ kron(self.v_a, self.v_b)

    def validate(self, tol: float = 1e-9, source: Optional[np.ndarray] = None) -> None:
        """Checks every structural invariant; raises InvariantViolation on the first broken one.

        Args:
            tol: Tolerance for projector algebra and unitarity.
            source: When given, the reconstruction must match it up to global phase.
        """
        if not self.blocks:
            raise InvariantViolation("controlled form has no blocks")
        for name in ("u_a", "u_b", "v_a", "v_b"):
            matrix = getattr(self, name)
            if np.shape(matrix) != (self.d, self.d):
                raise DimensionError(f"{name} must be {self.d}x{self.d}")
            if unitarity_residual(matrix) > tol:
                raise NonUnitaryError(f"{name} is not unitary")

        identity = np.eye(self.d)
        total = np.zeros((self.d, self.d), dtype=complex)
        for n, (projector, target) in enumerate(self.blocks):
            if np.linalg.norm(projector @ projector - projector) > tol:
                raise InvariantViolation(f"block {n}: P is not a projector")
            if np.linalg.norm(projector - projector.conj().T) > tol:
                raise InvariantViolation(f"block {n}: P is not Hermitian")
            if unitarity_residual(target) > tol:
                raise NonUnitaryError(f"block {n}: target operator is not unitary")
            for m in range(n):
                other, other_target = self.blocks[m]
                if np.linalg.norm(projector @ other) > tol:
                    raise InvariantViolation(f"blocks {m} and {n} are not orthogonal")
                if phase_aligned_distance(target, other_target) <= tol:
                    raise InvariantViolation(f"blocks {m} and {n} share their target unitary")
            total += projector
        if np.linalg.norm(total - identity) > tol:
            raise InvariantViolation("projectors do not sum to the identity")

        if source is not None:
            residual = phase_aligned_distance(self.reconstruct(), source)
            if residual > max(tol, 1e-8):
                raise InvariantViolation(f"reconstruction residual {residual:.3e}")


@dataclass
class OneWayProtocol:
    """Alice measures {M^n} and sends n; Bob applies w^n."""

    d: int
    alice_ops: List[np.ndarray]
    bob_corrections: List[np.ndarray]

    def __post_init__(self):
        if len(self.alice_ops) == 0:
            raise InvariantViolation("protocol needs at least one branch")
        if len(self.alice_ops) != len(self.bob_corrections):
            raise InvariantViolation(
                f"{len(self.alice_ops)} measurement operators but "
                f"{len(self.bob_corrections)} corrections"
            )
        self.alice_ops = [np.asarray(m, dtype=complex) for m in self.alice_ops]
        self.bob_corrections = [np.asarray(w, dtype=complex) for w in self.bob_corrections]
        for op in self.alice_ops + self.bob_corrections:
            if op.shape != (self.d, self.d):
                raise DimensionError(f"protocol operator of shape {op.shape}, expected d={self.d}")

    @property
    def branches(self) -> int:
        return len(self.alice_ops)


@dataclass
class ClassificationDiagnostics:
    """Numbers behind a classification verdict."""

    schmidt_rank: int
    schmidt_coeffs: List[float]
    commutator_residual_left: Optional[float] = None
    commutator_residual_right: Optional[float] = None
    joint_diagonalization_residual: Optional[float] = None
    diagonality_residual: Optional[float] = None
    block_unitarity_residual: Optional[float] = None
    reconstruction_residual: Optional[float] = None
    canonical_theta: Optional[Tuple[float, float, float]] = None
    verification_min_fidelity: Optional[float] = None
    verification_failed: bool = False
    control_side: str = "A"
    tol: float = 1e-6
    reason: Optional[str] = None


@dataclass
class Classification:
    label: str
    controlled_form: Optional[ControlledForm]
    diagnostics: ClassificationDiagnostics
    protocol: Optional[OneWayProtocol] = None

    def __post_init__(self):
        if self.label not in (CLASS_1, CLASS_2):
            raise InvariantViolation(f"unknown label {self.label!r}")
        if (self.label == CLASS_1) != (self.controlled_form is not None):
            raise InvariantViolation("a Class1 label requires a controlled form, Class2 forbids it")

    @property
    def is_class1(self) -> bool:
        return self.label == CLASS_1


@dataclass
class BranchOutcome:
    """One measurement branch of one simulated trial."""

    trial: int
    outcome: int
    probability: float
    bob_fidelity: Optional[float] = None
    alice_residual: Optional[np.ndarray] = None


@dataclass
class SimulationReport:
    """Aggregate of simulated branches; ``verdict`` is True when relocalization held."""

    branches: List[BranchOutcome]
    min_fidelity: float
    mean_fidelity: float
    verdict: bool
    trials: int
    seed: Optional[int]
    probability_defect: float = 0.0
    residual_deviation: float = 0.0
    tol_verify: float = 1e-9
    p_floor: float = 1e-12


@dataclass
class AncillaBranch:
    outcome: int
    probability: float
    fidelity: float
    product_residual: float


@dataclass
class AncillaReport:
    """Verification against maximally entangled ancillas on both sides."""

    branches: List[AncillaBranch]
    min_fidelity: float
    max_product_residual: float
    probability_sum: float
    verdict: bool
    tol_verify: float = 1e-9


@dataclass
class EntanglingPowerResult:
    """Best product input found by the entangling-power optimizer.

    Attributes:
        value: Entanglement (ebits) of U(ψA⊗ψB) at the best input.
        argmax_a: Maximizing input on A.
        argmax_b: Maximizing input on B.
        restarts: Number of random restarts.
        seed: Seed the restart generators were derived from.
        converged_restarts: Restarts that met the improvement criterion before the iteration cap.
        restart_values: Final value of every restart, in restart order.
    """

    value: float
    argmax_a: PureState
    argmax_b: PureState
    restarts: int
    seed: Optional[int]
    converged_restarts: int
    restart_values: List[float] = field(default_factory=list)


@dataclass
class GateSpec:
    """Gallery constructor name plus its keyword parameters."""

    name: str
    params: Dict[str, Union[int, float]] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return int(self.params.get("d", 2))

    def __str__(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(f"{key}={value}" for key, value in self.params.items())
        return f"{self.name}:{args}"


@dataclass
class ContrastRow:
    """Delocalization verdict and entangling power of one gate, side by side."""

    gate: str
    label: str
    schmidt_rank: int
    entangling_power: float
