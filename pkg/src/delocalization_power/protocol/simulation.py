"""
Simulation and verification of one-way relocalization protocols.

Each random trial owns a generator seeded by ``(seed, trial)``, so reports are
identical for any number of workers.
"""

from typing import List, Optional, Tuple

import numpy as np

from ..core.errors import DimensionError
from ..core.linalg import (
    amplitudes,
    kron,
    make_rng,
    partial_trace,
    random_state,
    reduced_state,
    state_fidelity,
    trace_distance,
)
from ..core.logger import get_logger, is_logging_enabled, log_debug
from ..core.models import (
    AncillaBranch,
    AncillaReport,
    BranchOutcome,
    Gate,
    OneWayProtocol,
    PureState,
    SimulationReport,
)
from ..core.parallel import ordered_map

TOL_VERIFY = 1e-9
P_FLOOR = 1e-12
DEFAULT_TRIALS = 50


def _check_dims(g: Gate, p: OneWayProtocol) -> None:
    if p.d != g.d:
        raise DimensionError(f"protocol for d={p.d} cannot run on a gate with d={g.d}")


def simulate_branches(
    g: Gate,
    p: OneWayProtocol,
    psi_a: PureState,
    psi_b: PureState,
    p_floor: float = P_FLOOR,
    trial: int = 0,
) -> List[BranchOutcome]:
    """Runs every measurement branch of ``p`` after ``g`` on ψA⊗ψB.

    Branch n is the unnormalized vector (M^n⊗w^n)·U·(ψA⊗ψB); its squared norm
    is the probability. Above ``p_floor`` the branch records Bob's fidelity
    with ψB and Alice's residual, kept unnormalized (probability × ρ_A) so
    that ψB-independence covers the outcome statistics too.
    """
    _check_dims(g, p)
    d = g.d
    vec_a = amplitudes(psi_a)
    vec_b = amplitudes(psi_b)
    if vec_a.size != d or vec_b.size != d:
        raise DimensionError(f"inputs of sizes {vec_a.size}, {vec_b.size} for d={d}")

    output = g.matrix @ np.kron(vec_a, vec_b)
    outcomes = []
    for n, (measurement, correction) in enumerate(zip(p.alice_ops, p.bob_corrections)):
        branch = kron(measurement, correction) @ output
        probability = float(np.real(np.vdot(branch, branch)))
        if probability <= p_floor:
            outcomes.append(BranchOutcome(trial=trial, outcome=n, probability=probability))
            continue
        rho_b = reduced_state(branch, (d, d), "B") / probability
        outcomes.append(
            BranchOutcome(
                trial=trial,
                outcome=n,
                probability=probability,
                bob_fidelity=state_fidelity(vec_b, rho_b),
                alice_residual=reduced_state(branch, (d, d), "A"),
            )
        )
    return outcomes


def _residual_deviation(first: List[BranchOutcome], second: List[BranchOutcome], d: int) -> float:
    zero = np.zeros((d, d), dtype=complex)
    worst = 0.0
    for x, y in zip(first, second):
        rho_x = zero if x.alice_residual is None else x.alice_residual
        rho_y = zero if y.alice_residual is None else y.alice_residual
        worst = max(worst, trace_distance(rho_x, rho_y))
    return worst


def verify_relocalization(
    g: Gate,
    p: OneWayProtocol,
    trials: int = DEFAULT_TRIALS,
    seed: Optional[int] = 0,
    tol_verify: float = TOL_VERIFY,
    p_floor: float = P_FLOOR,
    psi_a: Optional[PureState] = None,
    workers: int = 1,
) -> SimulationReport:
    """Checks the relocalization contract on random product inputs.

    Every trial draws ψA (unless ``psi_a`` is fixed) and two independent ψB,
    ψB'. The verdict holds when every branch above ``p_floor`` returns ψB to Bob
    with fidelity ≥ 1 − tol_verify, Alice's per-branch residuals for ψB and
    ψB' agree within trace distance tol_verify, and the branch probabilities
    of each trial sum to 1 within tol_verify.

    Args:
        g: The gate.
        p: Candidate protocol.
        trials: Number of random inputs (≥ 1).
        seed: Root seed; trial t uses ``default_rng([seed, t])``.
        tol_verify: Verification tolerance.
        p_floor: Branches at or below this probability are not scored.
        psi_a: Fixed input for Alice; random per trial when omitted.
        workers: Threads used to run trials.

    Returns:
        SimulationReport: Branches of the ψB runs, ordered by trial.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    _check_dims(g, p)
    d = g.d
    if is_logging_enabled():
        get_logger().function_enter(
            "verify_relocalization", gate=g.name, trials=trials, seed=seed, workers=workers
        )

    def run_trial(trial: int) -> Tuple[List[BranchOutcome], List[float], float, float]:
        rng = make_rng(None if seed is None else [seed, trial])
        state_a = psi_a if psi_a is not None else random_state(d, rng)
        state_b = random_state(d, rng)
        state_b2 = random_state(d, rng)
        first = simulate_branches(g, p, state_a, state_b, p_floor, trial)
        second = simulate_branches(g, p, state_a, state_b2, p_floor, trial)
        fidelities = [b.bob_fidelity for b in first + second if b.bob_fidelity is not None]
        defect = max(
            abs(sum(b.probability for b in first) - 1.0),
            abs(sum(b.probability for b in second) - 1.0),
        )
        return first, fidelities, defect, _residual_deviation(first, second, d)

    results = ordered_map(run_trial, range(trials), workers)

    branches: List[BranchOutcome] = []
    fidelities: List[float] = []
    defect = 0.0
    deviation = 0.0
    for trial_branches, trial_fidelities, trial_defect, trial_deviation in results:
        branches.extend(trial_branches)
        fidelities.extend(trial_fidelities)
        defect = max(defect, trial_defect)
        deviation = max(deviation, trial_deviation)

    min_fidelity = min(fidelities) if fidelities else 0.0
    mean_fidelity = float(np.mean(fidelities)) if fidelities else 0.0
    verdict = (
        min_fidelity >= 1.0 - tol_verify and deviation <= tol_verify and defect <= tol_verify
    )
    log_debug(
        f"verify_relocalization: min_fidelity={min_fidelity:.12f} "
        f"deviation={deviation:.3e} defect={defect:.3e} verdict={verdict}"
    )
    return SimulationReport(
        branches=branches,
        min_fidelity=min_fidelity,
        mean_fidelity=mean_fidelity,
        verdict=verdict,
        trials=trials,
        seed=seed,
        probability_defect=defect,
        residual_deviation=deviation,
        tol_verify=tol_verify,
        p_floor=p_floor,
    )


def verify_ancilla_mode(
    g: Gate,
    p: OneWayProtocol,
    tol_verify: float = TOL_VERIFY,
    p_floor: float = P_FLOOR,
) -> AncillaReport:
    """Verifies the protocol on maximally entangled ancilla inputs.

    A and B each start maximally entangled with an ancilla (a, b). After U
    and branch n the joint vector, ordered (A, B, a, b), is K_n/d with
    K_n = (M^n⊗w^n)·U. Relocalization holds on every input exactly when
    (B, b) is still |Φ+⟩ in every branch, i.e. when K_n = X_n⊗I. The report
    also gives ‖K_n − X_n⊗I‖_F/‖K_n‖_F with X_n = Tr_B(K_n)/d.
    """
    _check_dims(g, p)
    d = g.d
    phi_plus = np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
    identity = np.eye(d, dtype=complex)

    branches = []
    total = 0.0
    for n, (measurement, correction) in enumerate(zip(p.alice_ops, p.bob_corrections)):
        accumulated = kron(measurement, correction) @ g.matrix
        norm = float(np.linalg.norm(accumulated))
        probability = norm**2 / d**2
        total += probability
        if probability <= p_floor:
            continue
        tensor = (accumulated / d).reshape(d, d, d, d)
        rho_bb = np.einsum("ijkl,imkn->jlmn", tensor, tensor.conj()).reshape(d * d, d * d)
        fidelity = state_fidelity(phi_plus, rho_bb / probability)
        local = partial_trace(accumulated, (d, d), "A") / d
        product_residual = float(np.linalg.norm(accumulated - kron(local, identity)) / norm)
        branches.append(AncillaBranch(n, probability, fidelity, product_residual))

    min_fidelity = min((b.fidelity for b in branches), default=0.0)
    max_residual = max((b.product_residual for b in branches), default=0.0)
    verdict = min_fidelity >= 1.0 - tol_verify and abs(total - 1.0) <= tol_verify
    log_debug(f"verify_ancilla_mode: min_fidelity={min_fidelity:.12f} total={total:.12f}")
    return AncillaReport(
        branches=branches,
        min_fidelity=min_fidelity,
        max_product_residual=max_residual,
        probability_sum=total,
        verdict=verdict,
        tol_verify=tol_verify,
    )


__all__ = [
    "DEFAULT_TRIALS",
    "P_FLOOR",
    "TOL_VERIFY",
    "simulate_branches",
    "verify_ancilla_mode",
    "verify_relocalization",
]
