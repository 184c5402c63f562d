"""
One-way LOCC protocol synthesis from a controlled form, plus structural audits.
"""

from typing import Sequence, Tuple

import numpy as np
import scipy.linalg

from ..core.errors import DimensionError
from ..core.linalg import unitarity_residual
from ..core.logger import log_debug
from ..core.models import ControlledForm, OneWayProtocol

TOL_FORM = 1e-9


def synthesize_protocol(cf: ControlledForm, tol: float = TOL_FORM) -> OneWayProtocol:
    """Builds the relocalization protocol of a controlled form.

    Alice measures {P^m·u_a†} and announces m; Bob applies (u_b·u^m·v_b)†.
    Branch m then leaves (P^m v_a ψA) ⊗ ψB, so Bob holds his piece exactly.

    Raises:
        InvariantViolation: If ``cf`` breaks a ControlledForm invariant.
    """
    cf.validate(tol)
    u_a_dag = cf.u_a.conj().T
    alice_ops = [projector @ u_a_dag for projector, _ in cf.blocks]
    bob_corrections = [(cf.u_b @ target @ cf.v_b).conj().T for _, target in cf.blocks]
    log_debug(f"synthesize_protocol: d={cf.d} branches={len(alice_ops)}")
    return OneWayProtocol(d=cf.d, alice_ops=alice_ops, bob_corrections=bob_corrections)


def check_completeness(ops: Sequence[np.ndarray]) -> float:
    """‖Σ_n M^n†M^n − I‖_F, zero for a trace-preserving measurement."""
    ops = [np.asarray(m, dtype=complex) for m in ops]
    if not ops:
        raise DimensionError("no measurement operators given")
    dim = ops[0].shape[0]
    total = np.zeros((dim, dim), dtype=complex)
    for m in ops:
        if m.shape != (dim, dim):
            raise DimensionError(f"operator of shape {m.shape}, expected {(dim, dim)}")
        total += m.conj().T @ m
    return float(np.linalg.norm(total - np.eye(dim)))


def audit_protocol(p: OneWayProtocol) -> Tuple[float, float]:
    """Returns (completeness residual, worst unitarity residual of Bob's corrections)."""
    worst = max(unitarity_residual(w) for w in p.bob_corrections)
    return check_completeness(p.alice_ops), worst


def hermitianize_protocol(p: OneWayProtocol) -> OneWayProtocol:
    """Replaces every M^n by |M^n| = √(M^n†M^n).

    M = w·|M| (polar form), and the extra unitary w acts on Alice's side only,
    so completeness and Bob's relocalized piece are unchanged.
    """
    positive = [scipy.linalg.polar(m)[1] for m in p.alice_ops]
    return OneWayProtocol(d=p.d, alice_ops=positive, bob_corrections=list(p.bob_corrections))
