"""
Dense complex linear-algebra primitives shared by every analysis module.

Composite index convention for H_A ⊗ H_B: ``i_A * d_B + i_B`` (the ``np.kron``
order), fixed for the whole package.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, List, Literal, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from .errors import DecompositionError, DimensionError, NormalizationError

if TYPE_CHECKING:
    from .models import PureState

Side = Literal["A", "B"]
SeedLike = Union[None, int, Sequence[int], np.random.Generator]
StateLike = Union["PureState", np.ndarray, Sequence[complex]]

TOL_UNITARY = 1e-10
TOL_NORM = 1e-10
ENTROPY_CUTOFF = 1e-15

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def make_rng(seed: SeedLike = None) -> np.random.Generator:
    """Returns a numpy Generator; an existing Generator is passed through unchanged."""
    return np.random.default_rng(seed)


def amplitudes(state: StateLike) -> np.ndarray:
    """Returns the amplitude vector of a PureState or array-like as a 1-D complex array."""
    values = getattr(state, "amplitudes", state)
    return np.asarray(values, dtype=complex).reshape(-1)


def kron(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Kronecker product, A-factor major: ``(x ⊗ y)[i*m + k, j*n + l] = x[i, j] * y[k, l]``."""
    return np.kron(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))


def partial_trace(rho: np.ndarray, dims: Tuple[int, int], keep: Side) -> np.ndarray:
    """Traces out one factor of an operator on H_A ⊗ H_B.

    Args:
        rho: Square matrix of size ``dA*dB``.
        dims: The pair ``(dA, dB)``.
        keep: ``"A"`` or ``"B"``, the factor that survives.

    Returns:
        np.ndarray: The reduced operator on the kept factor.

    Raises:
        DimensionError: If ``rho`` does not match ``dims``.
    """
    d_a, d_b = dims
    rho = np.asarray(rho, dtype=complex)
    size = d_a * d_b
    if rho.shape != (size, size):
        raise DimensionError(
            f"partial_trace: operator of shape {rho.shape} does not match dims {dims}"
        )
    tensor = rho.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ijkj->ik", tensor)
    if keep == "B":
        return np.einsum("ijil->jl", tensor)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def reduced_state(state: StateLike, dims: Tuple[int, int], keep: Side) -> np.ndarray:
    """Reduced density matrix of a bipartite vector without forming |ψ⟩⟨ψ|."""
    d_a, d_b = dims
    vec = amplitudes(state)
    if vec.size != d_a * d_b:
        raise DimensionError(f"state of size {vec.size} does not match dims {dims}")
    mat = vec.reshape(d_a, d_b)
    if keep == "A":
        return mat @ mat.conj().T
    if keep == "B":
        return mat.T @ mat.conj()
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def haar_random_unitary(dim: int, seed: SeedLike = None) -> np.ndarray:
    """Samples a Haar-random ``dim × dim`` unitary.

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` moved into Q
    so the distribution is exactly Haar.
    """
    if dim < 1:
        raise DimensionError(f"dim must be >= 1, got {dim}")
    rng = make_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_state(dim: int, seed: SeedLike = None) -> "PureState":
    """Haar-random unit vector of dimension ``dim``."""
    from .models import PureState

    rng = make_rng(seed)
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(vec / np.linalg.norm(vec))


def random_product_state(d: int, seed: SeedLike = None) -> Tuple["PureState", "PureState"]:
    """Two independent Haar-random qudit states (ψA, ψB)."""
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    rng = make_rng(seed)
    return random_state(d, rng), random_state(d, rng)


def entropy_bits(probabilities: np.ndarray) -> float:
    """Shannon entropy in bits; entries are clamped to [0, 1] and those below 1e-15 dropped."""
    p = np.clip(np.real(np.asarray(probabilities)), 0.0, 1.0)
    p = p[p >= ENTROPY_CUTOFF]
    return max(0.0, float(-np.sum(p * np.log2(p))))


def entanglement_entropy(state: StateLike, dims: Tuple[int, int]) -> float:
    """Entropy of entanglement (ebits) of a bipartite pure state.

    Raises:
        NormalizationError: If the state is not unit norm within TOL_NORM.
    """
    vec = amplitudes(state)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > TOL_NORM:
        raise NormalizationError(f"state norm is {norm:.3e}, expected 1")
    rho_a = reduced_state(vec, dims, "A")
    return entropy_bits(np.linalg.eigvalsh(rho_a))


def state_fidelity(state: StateLike, rho: np.ndarray) -> float:
    """Fidelity ⟨ψ|ρ|ψ⟩ of a pure state against a density matrix, clipped to [0, 1]."""
    vec = amplitudes(state)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (vec.size, vec.size):
        raise DimensionError(
            f"state of size {vec.size} incompatible with operator of shape {rho.shape}"
        )
    value = float(np.real(np.vdot(vec, rho @ vec)))
    return min(1.0, max(0.0, value))


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """½‖ρ − σ‖₁ computed from Hermitian eigenvalues."""
    delta = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    delta = (delta + delta.conj().T) / 2
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(delta))))


def unitarity_residual(matrix: np.ndarray) -> float:
    """‖M†M − I‖_F / √dim, the metric behind TOL_UNITARY."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    return float(np.linalg.norm(m.conj().T @ m - np.eye(n)) / np.sqrt(n))


def phase_aligned_distance(x: np.ndarray, y: np.ndarray) -> float:
    """min over φ of ‖x − e^{iφ} y‖_F."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    overlap = np.vdot(y, x)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(x - phase * y))


def swap_operator(d: int) -> np.ndarray:
    """SWAP on two qudits of dimension d."""
    swap = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            swap[j * d + i, i * d + j] = 1.0
    return swap


def swap_subsystems(matrix: np.ndarray, d: int) -> np.ndarray:
    """SWAP·M·SWAP, i.e. M with the roles of A and B exchanged."""
    swap = swap_operator(d)
    return swap @ np.asarray(matrix, dtype=complex) @ swap


def interaction_unitary(theta: Sequence[float]) -> np.ndarray:
    """exp(i(θx σx⊗σx + θy σy⊗σy + θz σz⊗σz)) in closed form.

    The three terms commute and square to the identity, so each factor is
    cos θ·I + i sin θ·σ⊗σ.
    """
    result = np.eye(4, dtype=complex)
    for angle, pauli in zip(theta, PAULIS):
        result = result @ (np.cos(angle) * np.eye(4) + 1j * np.sin(angle) * kron(pauli, pauli))
    return result


def nearest_unitary(matrix: np.ndarray) -> np.ndarray:
    """Unitary factor of the polar decomposition (closest unitary in Frobenius norm)."""
    u, _ = scipy.linalg.polar(np.asarray(matrix, dtype=complex))
    return u


# Fixed generic weights; only their genericity matters.
_COMBINATION_WEIGHTS = np.random.default_rng(20_190_611).standard_normal(512)


def _off_diagonal_mass(stack: np.ndarray) -> float:
    diagonals = np.einsum("kii->ki", stack)
    return float(np.sum(np.abs(stack) ** 2) - np.sum(np.abs(diagonals) ** 2))


def joint_diagonalize(
    matrices: Sequence[np.ndarray],
    max_sweeps: int = 100,
    min_improvement: float = 1e-12,
) -> Tuple[np.ndarray, float]:
    """Finds one unitary V that makes every matrix of a Hermitian family diagonal.

    The eigenbasis of a generic real combination of the family is the starting
    point; Jacobi sweeps with complex Givens rotations then minimize the
    off-diagonal Frobenius mass of the whole family.

    Args:
        matrices: Hermitian matrices of equal shape (non-Hermitian input is symmetrized).
        max_sweeps: Upper bound on Jacobi sweeps.
        min_improvement: A sweep improving the off-diagonal mass by less stops the loop.

    Returns:
        Tuple[np.ndarray, float]: ``V`` and the remaining off-diagonal Frobenius norm
        of the family ``{V† H_k V}``.

    Raises:
        DecompositionError: If the family is empty or the eigensolver fails.
    """
    if len(matrices) == 0:
        raise DecompositionError("joint_diagonalize needs at least one matrix")
    stack = np.array([np.asarray(m) for m in matrices])
    # real symmetric families stay in real arithmetic, so V comes out orthogonal
    real = np.isrealobj(stack)
    stack = stack.astype(float if real else complex)
    stack = (stack + np.conj(np.transpose(stack, (0, 2, 1)))) / 2
    n = stack.shape[1]

    weights = np.resize(_COMBINATION_WEIGHTS, stack.shape[0])
    try:
        _, basis = np.linalg.eigh(np.tensordot(weights, stack, axes=1))
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"eigensolver failed: {exc}") from exc
    stack = np.conj(basis.T) @ stack @ basis

    off = _off_diagonal_mass(stack)
    for _ in range(max_sweeps):
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = np.array(
                    [
                        stack[:, p, p] - stack[:, q, q],
                        stack[:, p, q] + stack[:, q, p],
                        1j * (stack[:, q, p] - stack[:, p, q]),
                    ]
                )
                gram = np.real(g @ g.conj().T)
                _, vecs = np.linalg.eigh(gram)
                x, y, z = vecs[:, -1]
                if x < 0:
                    x, y, z = -x, -y, -z
                c = np.sqrt(0.5 + x / 2)
                s = 0.5 * y / c if real else 0.5 * (y - 1j * z) / c
                if abs(s) < 1e-15:
                    continue
                rotation = np.array([[c, -np.conj(s)], [s, c]])
                pair = [p, q]
                basis[:, pair] = basis[:, pair] @ rotation
                stack[:, pair, :] = rotation.conj().T @ stack[:, pair, :]
                stack[:, :, pair] = stack[:, :, pair] @ rotation
        new_off = _off_diagonal_mass(stack)
        improvement = off - new_off
        off = new_off
        if improvement < min_improvement:
            break
    return basis, float(np.sqrt(max(off, 0.0)))


def commutator_residual(matrices: List[np.ndarray]) -> float:
    """Largest Frobenius norm of [X, Y] over all pairs of the family."""
    worst = 0.0
    for i, x in enumerate(matrices):
        for y in matrices[i + 1 :]:
            worst = max(worst, float(np.linalg.norm(x @ y - y @ x)))
    return worst
