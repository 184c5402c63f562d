"""
Entangling power: the largest entanglement a gate creates from a product pure input.
"""

from typing import Iterable, List, Optional, Tuple

import numpy as np
import scipy.optimize

from ..core.linalg import entropy_bits, make_rng, random_state
from ..core.logger import get_logger, is_logging_enabled, log_debug
from ..core.models import ContrastRow, EntanglingPowerResult, Gate, PureState
from ..core.parallel import ordered_map
from .classify import TOL_STRUCTURE, classify_gate
from .schmidt import schmidt_decompose

DEFAULT_RESTARTS = 64
MIN_IMPROVEMENT = 1e-10
MAX_ITERATIONS = 500


def output_entanglement(g: Gate, psi_a, psi_b) -> float:
    """E(U(ψA⊗ψB)) in ebits; the inputs need not be normalized."""
    vec_a = np.asarray(getattr(psi_a, "amplitudes", psi_a), dtype=complex)
    vec_b = np.asarray(getattr(psi_b, "amplitudes", psi_b), dtype=complex)
    output = g.matrix @ np.kron(vec_a, vec_b)
    singular = np.linalg.svd(output.reshape(g.d, g.d), compute_uv=False)
    weights = singular**2
    total = weights.sum()
    if total == 0:
        return 0.0
    return entropy_bits(weights / total)


def _to_vector(x: np.ndarray, d: int) -> np.ndarray:
    return x[:d] + 1j * x[d:]


def _refine(g: Gate, fixed: np.ndarray, start: np.ndarray, side: str) -> Tuple[np.ndarray, float]:
    """Maximizes the output entanglement over one input with the other held fixed."""
    d = g.d

    def objective(x: np.ndarray) -> float:
        vec = _to_vector(x, d)
        if side == "A":
            return -output_entanglement(g, vec, fixed)
        return -output_entanglement(g, fixed, vec)

    x0 = np.concatenate([start.real, start.imag])
    result = scipy.optimize.minimize(objective, x0, method="L-BFGS-B")
    vec = _to_vector(result.x, d)
    norm = np.linalg.norm(vec)
    if norm == 0 or -result.fun < -objective(x0):
        return start, -objective(x0)
    return vec / norm, float(-result.fun)


def _run_restart(g: Gate, seed: Optional[int], index: int) -> Tuple[float, np.ndarray, np.ndarray, bool]:
    rng = make_rng(None if seed is None else [seed, index])
    vec_a = random_state(g.d, rng).amplitudes.copy()
    vec_b = random_state(g.d, rng).amplitudes.copy()
    value = output_entanglement(g, vec_a, vec_b)
    converged = False
    for _ in range(MAX_ITERATIONS):
        vec_a, _ = _refine(g, vec_b, vec_a, "A")
        vec_b, new_value = _refine(g, vec_a, vec_b, "B")
        improvement = new_value - value
        value = max(value, new_value)
        if improvement < MIN_IMPROVEMENT:
            converged = True
            break
    return value, vec_a, vec_b, converged


def entangling_power_estimate(
    g: Gate,
    restarts: int = DEFAULT_RESTARTS,
    seed: Optional[int] = 0,
    workers: int = 1,
) -> EntanglingPowerResult:
    """Estimates max E(U(ψA⊗ψB)) over product pure inputs.

    Each restart starts from a random product state (generator seeded by
    ``(seed, restart)``) and alternates L-BFGS-B refinements of ψA and ψB until
    an alternation gains less than 1e-10 ebit or 500 alternations pass. The
    estimate is the best restart, so it never decreases when restarts are added.

    Args:
        g: The gate.
        restarts: Number of random restarts (≥ 1).
        seed: Root seed.
        workers: Threads used to run restarts.

    Returns:
        EntanglingPowerResult: Best value, maximizing inputs and per-restart values.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    if is_logging_enabled():
        get_logger().function_enter("entangling_power_estimate", gate=g.name, restarts=restarts, seed=seed)

    runs = ordered_map(lambda index: _run_restart(g, seed, index), range(restarts), workers)
    values = [run[0] for run in runs]
    best = int(np.argmax(values))
    value, vec_a, vec_b, _ = runs[best]
    upper = float(np.log2(g.d))
    result = EntanglingPowerResult(
        value=min(max(value, 0.0), upper),
        argmax_a=PureState.from_vector(vec_a),
        argmax_b=PureState.from_vector(vec_b),
        restarts=restarts,
        seed=seed,
        converged_restarts=sum(1 for run in runs if run[3]),
        restart_values=[float(v) for v in values],
    )
    log_debug(f"entangling_power_estimate: value={result.value:.12f} best_restart={best}")
    return result


def contrast(
    gates: Iterable[Gate],
    restarts: int = DEFAULT_RESTARTS,
    seed: Optional[int] = 0,
    tol: float = TOL_STRUCTURE,
    workers: int = 1,
) -> List[ContrastRow]:
    """Delocalization class and entangling power of each gate, side by side.

    The two notions order gates differently: a weak Heisenberg interaction is
    Class 2 while creating almost no entanglement, CNOT is Class 1 at one ebit.
    """
    rows = []
    for g in gates:
        label = classify_gate(g, tol, seed=0 if seed is None else seed).label
        power = entangling_power_estimate(g, restarts, seed, workers).value
        rows.append(
            ContrastRow(
                gate=g.name or "",
                label=label,
                schmidt_rank=schmidt_decompose(g).rank,
                entangling_power=power,
            )
        )
    return rows
