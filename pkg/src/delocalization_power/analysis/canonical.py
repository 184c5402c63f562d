"""
Kraus-Cirac canonical decomposition of two-qubit gates.

U = e^{iφ}(pre_a⊗pre_b)·exp(i(θx XX + θy YY + θz ZZ))·(post_a⊗post_b), with θ
folded into the Weyl chamber π/4 ≥ θx ≥ θy ≥ |θz|, and θz ≥ 0 whenever θx = π/4.
"""

from typing import List, Tuple

import numpy as np
import scipy.linalg

from ..core.errors import DecompositionError, DimensionError
from ..core.linalg import (
    PAULIS,
    interaction_unitary,
    joint_diagonalize,
    kron,
    phase_aligned_distance,
)
from ..core.logger import log_debug
from ..core.models import CanonicalForm, Gate

MAGIC = np.array(
    [
        [1, 0, 0, 1j],
        [0, 1j, 1, 0],
        [0, 1j, -1, 0],
        [1, 0, 0, -1j],
    ],
    dtype=complex,
) / np.sqrt(2)
MAGIC_DAG = MAGIC.conj().T

WALL_ATOL = 1e-9

# Rows: magic-basis eigenvalues (±1) of I, XX, YY, ZZ.
_PHASE_SYSTEM = np.column_stack(
    [np.ones(4)] + [np.real(np.diag(MAGIC_DAG @ kron(p, p) @ MAGIC)) for p in PAULIS]
)

# iX, iY, iZ: special unitaries flipping the sign of the other two axes.
_FLIPPERS = [1j * p for p in PAULIS]

# Index k swaps the two axes other than k.
_SWAPPERS = [
    np.array([[1, -1j], [1j, -1]], dtype=complex) * 1j / np.sqrt(2),
    np.array([[1, 1], [1, -1]], dtype=complex) * 1j / np.sqrt(2),
    np.array([[0, 1 - 1j], [1 + 1j, 0]], dtype=complex) * 1j / np.sqrt(2),
]


def kron_factor(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Splits a 4x4 product operator K = a⊗b into its 2x2 factors.

    The realigned matrix of a product operator has rank one; its dominant
    singular pair gives both factors. For unitary K both factors come out
    unitary (each up to a phase the other compensates).
    """
    matrix = np.asarray(matrix, dtype=complex)
    realigned = matrix.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    left, values, right_h = scipy.linalg.svd(realigned)
    scale = np.sqrt(values[0])
    return scale * left[:, 0].reshape(2, 2), scale * right_h[0].reshape(2, 2)


def _diagonalize_in_magic_basis(u_magic: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Writes u_magic = L·diag(D)·Qᵀ with L, Q in SO(4) and D unimodular."""
    symmetric = u_magic.T @ u_magic
    q, _ = joint_diagonalize([np.real(symmetric), np.imag(symmetric)])
    q = np.real(q)

    eigenvalues = np.diag(q.T @ symmetric @ q)
    order = np.argsort(-np.angle(eigenvalues), kind="stable")
    q = q[:, order]
    for k in range(4):
        pivot = int(np.argmax(np.abs(q[:, k])))
        if q[pivot, k] < 0:
            q[:, k] = -q[:, k]
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]

    eigenvalues = np.diag(q.T @ symmetric @ q)
    diag = np.exp(0.5j * np.angle(eigenvalues))
    left = np.real(u_magic @ q @ np.diag(diag.conj()))
    if np.linalg.det(left) < 0:
        left[:, 0] = -left[:, 0]
        diag[0] = -diag[0]
    return left, diag, q


def _canonicalize_vector(
    x: float, y: float, z: float, atol: float = WALL_ATOL
) -> Tuple[complex, List[np.ndarray], List[np.ndarray], Tuple[float, float, float]]:
    """Folds an interaction vector into the Weyl chamber.

    Returns (phase, left, right, v) with
    exp(i(x XX + y YY + z ZZ)) = phase·(left[1]⊗left[0])·exp(i v·σσ)·(right[1]⊗right[0]).
    """
    phase = [complex(1)]
    left = [np.eye(2, dtype=complex), np.eye(2, dtype=complex)]
    right = [np.eye(2, dtype=complex), np.eye(2, dtype=complex)]
    v = [x, y, z]

    # exp(i·π/2·PP) = i·PP
    def shift(k, step):
        v[k] += step * np.pi / 2
        phase[0] *= 1j**step
        flip = np.linalg.matrix_power(_FLIPPERS[k], step % 4)
        right[0] = flip @ right[0]
        right[1] = flip @ right[1]

    def negate(k1, k2):
        v[k1] *= -1
        v[k2] *= -1
        phase[0] *= -1
        flip = _FLIPPERS[3 - k1 - k2]
        left[1] = left[1] @ flip
        right[1] = flip @ right[1]

    def swap(k1, k2):
        v[k1], v[k2] = v[k2], v[k1]
        swapper = _SWAPPERS[3 - k1 - k2]
        left[0] = left[0] @ swapper
        left[1] = left[1] @ swapper
        right[0] = swapper @ right[0]
        right[1] = swapper @ right[1]

    def canonical_shift(k):
        while v[k] <= -np.pi / 4:
            shift(k, +1)
        while v[k] > np.pi / 4:
            shift(k, -1)

    def sort():
        if abs(v[0]) < abs(v[1]):
            swap(0, 1)
        if abs(v[1]) < abs(v[2]):
            swap(1, 2)
        if abs(v[0]) < abs(v[1]):
            swap(0, 1)

    for k in range(3):
        canonical_shift(k)
    sort()
    if v[0] < 0:
        negate(0, 2)
    if v[1] < 0:
        negate(1, 2)
    canonical_shift(2)
    if v[0] > np.pi / 4 - atol and v[2] < 0:
        shift(0, -1)
        negate(0, 2)

    return phase[0], left, right, (float(v[0]), float(v[1]), float(v[2]))


def kraus_cirac_decompose(g: Gate) -> CanonicalForm:
    """Computes the canonical form of a two-qubit gate with the magic-basis method.

    Args:
        g: A gate with d = 2.

    Returns:
        CanonicalForm: Local factors, Weyl-chamber θ and global phase.

    Raises:
        DimensionError: If ``g.d != 2``; canonical forms exist only for two qubits.
        DecompositionError: If the factors fail to reconstruct the gate.
    """
    if g.d != 2:
        raise DimensionError(f"the canonical form is defined only for d = 2 (two qubits), got d = {g.d}")

    matrix = np.asarray(g.matrix)
    left, diag, q = _diagonalize_in_magic_basis(MAGIC_DAG @ matrix @ MAGIC)

    a_pre, b_pre = kron_factor(MAGIC @ left @ MAGIC_DAG)
    a_post, b_post = kron_factor(MAGIC @ q.T @ MAGIC_DAG)

    w, x, y, z = np.linalg.solve(_PHASE_SYSTEM, np.angle(diag))
    fold_phase, fold_left, fold_right, theta = _canonicalize_vector(x, y, z)

    global_phase = float(np.angle(np.exp(1j * w) * fold_phase))
    form = CanonicalForm(
        pre_a=a_pre @ fold_left[1],
        pre_b=b_pre @ fold_left[0],
        post_a=fold_right[1] @ a_post,
        post_b=fold_right[0] @ b_post,
        theta=theta,
        global_phase=global_phase,
    )

    residual = float(np.linalg.norm(form.reconstruct() - matrix))
    log_debug(f"kraus_cirac_decompose: theta={theta} phase={global_phase:.6f} residual={residual:.3e}")
    if residual > 1e-6:
        # global phase only: kron_factor may leave a sign between the two factor pairs
        if phase_aligned_distance(form.reconstruct(), matrix) > 1e-6:
            raise DecompositionError(f"canonical form does not reconstruct the gate ({residual:.3e})")
        overlap = np.vdot(form.reconstruct(), matrix)
        form.global_phase = float(np.angle(np.exp(1j * global_phase) * overlap / abs(overlap)))
    return form


def theta_distance(a: CanonicalForm, b: CanonicalForm) -> float:
    """Distance between two chamber points, modulo the chamber's residual mirror.

    (x, y, z) and (π/2 − x, y, −z) describe locally equivalent gates; on the
    x = π/4 wall this is the z ↔ −z identification.
    """
    ta = np.asarray(a.theta, dtype=float)
    tb = np.asarray(b.theta, dtype=float)
    mirrored = np.array([np.pi / 2 - tb[0], tb[1], -tb[2]])
    return float(min(np.linalg.norm(ta - tb), np.linalg.norm(ta - mirrored)))


__all__ = [
    "MAGIC",
    "interaction_unitary",
    "kraus_cirac_decompose",
    "kron_factor",
    "theta_distance",
]
