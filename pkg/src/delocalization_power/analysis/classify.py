"""
Class 1 / Class 2 decision: is a gate local-unitary equivalent to a controlled-unitary
with the control on A?

A Class 1 verdict is constructive. It carries the extracted ControlledForm
and the one-way protocol synthesized from it, and that protocol must pass a
simulation backstop before the label is returned. Every numerical failure
ends in Class 2 with the reason recorded in the diagnostics.
"""

from typing import List, Optional, Tuple

import numpy as np

from ..core.errors import DecompositionError, ExtractionError, InvariantViolation
from ..core.linalg import (
    PAULI_X,
    commutator_residual,
    joint_diagonalize,
    nearest_unitary,
    phase_aligned_distance,
    swap_subsystems,
    unitarity_residual,
)
from ..core.logger import get_logger, is_logging_enabled, log_debug
from ..core.models import (
    CLASS_1,
    CLASS_2,
    Block,
    CanonicalForm,
    Classification,
    ClassificationDiagnostics,
    ControlledForm,
    Gate,
    OperatorSchmidt,
)
from ..protocol.simulation import TOL_VERIFY, verify_relocalization
from ..protocol.synthesis import synthesize_protocol
from .canonical import kraus_cirac_decompose
from .schmidt import TOL_RANK, schmidt_decompose

TOL_STRUCTURE = 1e-6
VERIFY_TRIALS = 10

_PLUS = np.array([[1, 1], [1, 1]], dtype=complex) / 2
_MINUS = np.array([[1, -1], [-1, 1]], dtype=complex) / 2


def combine_blocks(
    u_a: np.ndarray, blocks: List[Block], tol: float = TOL_STRUCTURE
) -> Tuple[np.ndarray, List[Block]]:
    """Merges control levels whose target unitaries agree up to a phase.

    A level n joins group g when ‖e^{-iθ}C_n − C_g‖_F ≤ tol with
    θ = arg Tr(C_g†C_n). The phase e^{iθ} moves onto the control side,
    u_a ← u_a·(I + (e^{iθ} − 1)P_n), which leaves the other levels untouched.

    Returns:
        Tuple[np.ndarray, List[Block]]: The updated u_a and the merged blocks,
        in order of first appearance.
    """
    u_a = np.array(u_a, dtype=complex)
    identity = np.eye(u_a.shape[0])
    groups: List[List[np.ndarray]] = []
    for projector, target in blocks:
        for group in groups:
            overlap = np.vdot(group[1], target)
            if abs(overlap) == 0:
                continue
            phase = overlap / abs(overlap)
            if np.linalg.norm(target / phase - group[1]) <= tol:
                u_a = u_a @ (identity + (phase - 1) * projector)
                group[0] = group[0] + projector
                break
        else:
            groups.append([np.array(projector, dtype=complex), np.array(target, dtype=complex)])
    return u_a, [(projector, target) for projector, target in groups]


def extract_controlled_form(
    os: OperatorSchmidt,
    tol: float = TOL_STRUCTURE,
    force: bool = False,
    diagnostics: Optional[ClassificationDiagnostics] = None,
) -> ControlledForm:
    """Extracts (u_a ⊗ I)·(Σ_n P^n⊗u^n)·(v_a ⊗ I) from an operator Schmidt decomposition.

    The Hermitian parts of {A_k†A_l} are jointly diagonalized to get c, the
    columns of A_k·c give a, each D_k = a†A_k c must be diagonal, and level n
    gets the target C_n = Σ_k λ_k (D_k)_nn B_k. Levels with equal targets are
    merged by :func:`combine_blocks`.

    Args:
        os: Decomposition of the gate (only the first ``os.rank`` terms are used).
        tol: Structural tolerance for commutators, diagonality, unitarity and reconstruction.
        force: Skip every tolerance gate. Targets are always projected onto the
            nearest unitary, so the result is a well-formed ControlledForm whether
            or not it reproduces the gate.
        diagnostics: Optional record updated with the residuals met on the way.

    Raises:
        ExtractionError: When a structural check exceeds ``tol`` (never with ``force``).
    """
    d = os.d
    rank = max(1, os.rank)
    if rank > d and not force:
        raise ExtractionError(f"Schmidt rank {rank} exceeds the local dimension {d}")
    factors_a = os.factors_a[:rank]
    factors_b = os.factors_b[:rank]
    coeffs = os.coeffs[:rank]

    if not force:
        left = [x @ y.conj().T for x in factors_a for y in factors_a]
        right = [x.conj().T @ y for x in factors_a for y in factors_a]
        left_residual = commutator_residual(left)
        right_residual = commutator_residual(right)
        if diagnostics is not None:
            diagnostics.commutator_residual_left = left_residual
            diagnostics.commutator_residual_right = right_residual
        if max(left_residual, right_residual) > tol:
            raise ExtractionError(
                f"Schmidt factors do not commute (residuals {left_residual:.3e}, {right_residual:.3e})"
            )

    family = []
    for k in range(rank):
        for l in range(k, rank):
            product = factors_a[k].conj().T @ factors_a[l]
            family.append((product + product.conj().T) / 2)
            family.append((product - product.conj().T) / 2j)
    try:
        c, jd_residual = joint_diagonalize(family)
    except DecompositionError as exc:
        raise ExtractionError(str(exc)) from exc
    if diagnostics is not None:
        diagnostics.joint_diagonalization_residual = jd_residual
    if jd_residual > tol and not force:
        raise ExtractionError(f"joint diagonalization residual {jd_residual:.3e}")

    columns = np.zeros((d, d), dtype=complex)
    for n in range(d):
        images = [factor @ c[:, n] for factor in factors_a]
        best = max(images, key=np.linalg.norm)
        norm = np.linalg.norm(best)
        if norm == 0:
            raise ExtractionError(f"control level {n} is annihilated by every Schmidt factor")
        columns[:, n] = best / norm
    a = nearest_unitary(columns)

    reduced = [a.conj().T @ factor @ c for factor in factors_a]
    diagonality = max(float(np.linalg.norm(m - np.diag(np.diag(m)))) for m in reduced)
    if diagnostics is not None:
        diagnostics.diagonality_residual = diagonality
    if diagonality > tol and not force:
        raise ExtractionError(f"a†A_k c is not diagonal (residual {diagonality:.3e})")

    blocks: List[Block] = []
    worst_unitarity = 0.0
    for n in range(d):
        target = sum(coeff * m[n, n] * b for coeff, m, b in zip(coeffs, reduced, factors_b))
        worst_unitarity = max(worst_unitarity, unitarity_residual(target))
        target = nearest_unitary(target)
        projector = np.zeros((d, d), dtype=complex)
        projector[n, n] = 1.0
        blocks.append((projector, target))
    if diagnostics is not None:
        diagnostics.block_unitarity_residual = worst_unitarity
    if worst_unitarity > tol and not force:
        raise ExtractionError(f"block target is not unitary (residual {worst_unitarity:.3e})")

    u_a, blocks = combine_blocks(a, blocks, tol)
    identity = np.eye(d, dtype=complex)
    form = ControlledForm(d=d, u_a=u_a, u_b=identity, v_a=c.conj().T, v_b=identity, blocks=blocks)

    if not force:
        residual = phase_aligned_distance(form.reconstruct(), os.reconstruct())
        if diagnostics is not None:
            diagnostics.reconstruction_residual = residual
        if residual > tol:
            raise ExtractionError(f"controlled form reconstruction residual {residual:.3e}")
    return form


def controlled_form_from_canonical(cf: CanonicalForm, tol: float = TOL_STRUCTURE) -> ControlledForm:
    """Controlled form of a two-qubit gate whose canonical θy and θz vanish.

    exp(iθX⊗X) = |+⟩⟨+|⊗e^{iθX} + |−⟩⟨−|⊗e^{−iθX}; the global phase rides on the targets.
    """
    theta_x = cf.theta[0]
    phase = np.exp(1j * cf.global_phase)
    rotation = np.cos(theta_x) * np.eye(2) + 1j * np.sin(theta_x) * PAULI_X
    blocks = [(_PLUS.copy(), phase * rotation), (_MINUS.copy(), phase * rotation.conj())]
    u_a, blocks = combine_blocks(cf.pre_a, blocks, tol)
    return ControlledForm(d=2, u_a=u_a, u_b=cf.pre_b, v_a=cf.post_a, v_b=cf.post_b, blocks=blocks)


def _class2(diagnostics: ClassificationDiagnostics, reason: str) -> Classification:
    diagnostics.reason = reason
    log_debug(f"classify: Class2 ({reason})")
    if is_logging_enabled():
        get_logger().residuals(
            "classify residuals",
            commutator_left=diagnostics.commutator_residual_left,
            commutator_right=diagnostics.commutator_residual_right,
            joint_diagonalization=diagnostics.joint_diagonalization_residual,
            diagonality=diagnostics.diagonality_residual,
            block_unitarity=diagnostics.block_unitarity_residual,
            reconstruction=diagnostics.reconstruction_residual,
        )
    return Classification(label=CLASS_2, controlled_form=None, diagnostics=diagnostics)


def classify_gate(
    g: Gate,
    tol: float = TOL_STRUCTURE,
    tol_rank: float = TOL_RANK,
    verify_trials: int = VERIFY_TRIALS,
    seed: int = 0,
    tol_verify: float = TOL_VERIFY,
    control_side: str = "A",
) -> Classification:
    """Decides whether ``g`` is one-piece relocalizable by LOCC (Class 1).

    For d = 2 the test is Schmidt rank ≤ 2, with the controlled form read off
    the canonical decomposition. For d ≥ 3 the commutant test and the
    extraction of :func:`extract_controlled_form` decide. A Class 1 candidate
    is then simulated with its synthesized protocol on ``verify_trials``
    random product inputs; a failed simulation turns the verdict into Class 2
    with ``verification_failed`` set.

    Args:
        g: The gate, control candidate on A.
        tol: Structural tolerance.
        tol_rank: Relative Schmidt-rank threshold.
        verify_trials: Random product inputs used by the backstop.
        seed: Seed of the backstop inputs.
        tol_verify: Fidelity tolerance of the backstop.
        control_side: Label recorded in the diagnostics ("A" or "B").

    Returns:
        Classification: The label, and for Class 1 the controlled form and protocol.

    Raises:
        ValueError: If ``tol`` is outside (0, 1).
    """
    if not 0 < tol < 1:
        raise ValueError(f"tol must be in (0, 1), got {tol}")
    if is_logging_enabled():
        get_logger().function_enter("classify_gate", gate=g.name, d=g.d, tol=tol, side=control_side)

    os = schmidt_decompose(g, tol_rank)
    diagnostics = ClassificationDiagnostics(
        schmidt_rank=os.rank,
        schmidt_coeffs=[float(x) for x in os.coeffs],
        control_side=control_side,
        tol=tol,
    )

    if g.d == 2:
        try:
            canonical = kraus_cirac_decompose(g)
        except DecompositionError as exc:
            return _class2(diagnostics, f"canonical decomposition failed: {exc}")
        diagnostics.canonical_theta = canonical.theta
        if os.rank > 2:
            return _class2(diagnostics, f"Schmidt rank {os.rank} > 2")
        form = controlled_form_from_canonical(canonical, tol)
    else:
        if os.rank > g.d:
            return _class2(diagnostics, f"Schmidt rank {os.rank} > d = {g.d}")
        try:
            form = extract_controlled_form(os, tol, diagnostics=diagnostics)
        except ExtractionError as exc:
            return _class2(diagnostics, str(exc))

    residual = phase_aligned_distance(form.reconstruct(), g.matrix)
    diagnostics.reconstruction_residual = residual
    if residual > tol:
        return _class2(diagnostics, f"reconstruction residual {residual:.3e} > {tol:.1e}")

    try:
        protocol = synthesize_protocol(form)
    except InvariantViolation as exc:
        return _class2(diagnostics, f"controlled form rejected: {exc}")
    if verify_trials > 0:
        report = verify_relocalization(g, protocol, trials=verify_trials, seed=seed, tol_verify=tol_verify)
        diagnostics.verification_min_fidelity = report.min_fidelity
        if not report.verdict:
            diagnostics.verification_failed = True
            return _class2(diagnostics, "synthesized protocol failed verification")

    result = Classification(label=CLASS_1, controlled_form=form, diagnostics=diagnostics, protocol=protocol)
    if is_logging_enabled():
        get_logger().function_exit("classify_gate", f"{CLASS_1} blocks={len(form.blocks)}")
    return result


def classify_gate_swapped(g: Gate, tol: float = TOL_STRUCTURE, **kwargs) -> Classification:
    """Classification with the control on B: classify_gate applied to SWAP·g·SWAP.

    The controlled form and protocol refer to the swapped gate, so Bob measures
    and Alice's piece is relocalized.
    """
    swapped = Gate(g.d, swap_subsystems(g.matrix, g.d), name=g.name)
    return classify_gate(swapped, tol, control_side="B", **kwargs)
