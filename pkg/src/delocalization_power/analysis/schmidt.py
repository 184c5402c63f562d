"""
Operator Schmidt decomposition of two-qudit gates.
"""

from typing import Optional, Union

import numpy as np
import scipy.linalg

from ..core.errors import DecompositionError, DimensionError
from ..core.logger import log_debug
from ..core.models import Gate, OperatorSchmidt

TOL_RANK = 1e-8


def _matrix_and_dim(g: Union[Gate, np.ndarray], d: Optional[int] = None):
    if isinstance(g, Gate):
        return np.asarray(g.matrix), g.d
    matrix = np.asarray(g, dtype=complex)
    if d is None:
        d = int(round(np.sqrt(matrix.shape[0])))
    if matrix.shape != (d * d, d * d):
        raise DimensionError(f"matrix of shape {matrix.shape} is not d²×d² for d={d}")
    return matrix, d


def reshuffle(g: Union[Gate, np.ndarray], d: Optional[int] = None) -> np.ndarray:
    """Realigns U so that R[(i,j),(a,b)] = U[(i,a),(j,b)].

    i, j index the A factor and a, b the B factor, so a product operator X⊗Y
    maps to the rank-1 matrix vec(X)·vec(Y)ᵀ.
    """
    matrix, d = _matrix_and_dim(g, d)
    return matrix.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def unreshuffle(r: np.ndarray, d: int) -> np.ndarray:
    """Inverse of :func:`reshuffle`; the index permutation is its own inverse."""
    return reshuffle(np.asarray(r, dtype=complex), d)


def schmidt_decompose(g: Gate, tol_rank: float = TOL_RANK) -> OperatorSchmidt:
    """Computes the operator Schmidt decomposition of a gate.

    The coefficients are the singular values of the realigned matrix. Each
    factor A_k has its largest-modulus entry made real and nonnegative, the
    compensating phase is carried by B_k.

    Args:
        g: The gate to decompose.
        tol_rank: Relative threshold (to the largest coefficient) for the rank.

    Returns:
        OperatorSchmidt: Coefficients, factor pairs and numerical rank.

    Raises:
        ValueError: If ``tol_rank`` is outside (0, 1).
        DecompositionError: If the SVD does not converge.
    """
    if not 0 < tol_rank < 1:
        raise ValueError(f"tol_rank must be in (0, 1), got {tol_rank}")
    d = g.d
    try:
        left, coeffs, right_h = scipy.linalg.svd(reshuffle(g))
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise DecompositionError(f"SVD of the realigned gate failed: {exc}") from exc

    factors_a = []
    factors_b = []
    for k in range(d * d):
        a = left[:, k].reshape(d, d)
        b = right_h[k].reshape(d, d)
        pivot = a.flat[int(np.argmax(np.abs(a)))]
        if abs(pivot) > 0:
            phase = pivot / abs(pivot)
            a = a / phase
            b = b * phase
        factors_a.append(a)
        factors_b.append(b)

    rank = int(np.count_nonzero(coeffs > tol_rank * coeffs[0]))
    log_debug(f"schmidt_decompose: d={d} rank={rank} coeffs={np.round(coeffs, 12).tolist()}")
    return OperatorSchmidt(
        d=d,
        coeffs=coeffs,
        factors_a=factors_a,
        factors_b=factors_b,
        rank=rank,
        tol_used=tol_rank,
    )


def schmidt_rank(g: Gate, tol_rank: float = TOL_RANK) -> int:
    return schmidt_decompose(g, tol_rank).rank
