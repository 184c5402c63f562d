"""
Fixed-input scenario for the ADQC gate (SWAP·CZ).

The gate is not equivalent to any controlled-unitary, yet when Alice's input
is known to be |+⟩ a one-way protocol still returns Bob's piece: measuring A in
the |±⟩ basis leaves H·ψB (outcome +) or X·H·ψB (outcome −) on B.
"""

from typing import Optional

import numpy as np

from ..core.linalg import HADAMARD, PAULI_Z
from ..core.models import Gate, OneWayProtocol, PureState, SimulationReport
from ..gallery.gates import adqc
from .simulation import DEFAULT_TRIALS, P_FLOOR, TOL_VERIFY, verify_relocalization

PLUS_STATE = PureState(np.array([1, 1], dtype=complex) / np.sqrt(2))


def adqc_protocol() -> OneWayProtocol:
    """{|+⟩⟨+|, |−⟩⟨−|} on A with corrections {H, Z·H} on B."""
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    minus = np.array([1, -1], dtype=complex) / np.sqrt(2)
    return OneWayProtocol(
        d=2,
        alice_ops=[np.outer(plus, plus.conj()), np.outer(minus, minus.conj())],
        bob_corrections=[HADAMARD, PAULI_Z @ HADAMARD],
    )


def adqc_scenario(
    trials: int = DEFAULT_TRIALS,
    seed: Optional[int] = 0,
    psi_a: Optional[PureState] = PLUS_STATE,
    gate: Optional[Gate] = None,
    tol_verify: float = TOL_VERIFY,
    p_floor: float = P_FLOOR,
) -> SimulationReport:
    """Runs the ADQC protocol with Alice's input fixed (|+⟩ by default) over random ψB.

    Passing ``psi_a=None`` draws a random ψA per trial, which the protocol does
    not survive.
    """
    return verify_relocalization(
        gate if gate is not None else adqc(),
        adqc_protocol(),
        trials=trials,
        seed=seed,
        tol_verify=tol_verify,
        p_floor=p_floor,
        psi_a=psi_a,
    )
