"""Tests for protocol synthesis, simulation and the ADQC scenario."""

import numpy as np
import pytest

from delocalization_power.analysis import classify_gate
from delocalization_power.core.errors import DimensionError, InvariantViolation
from delocalization_power.core.linalg import HADAMARD, PAULI_X, PAULI_Y, PAULI_Z, random_state
from delocalization_power.core.models import ControlledForm, OneWayProtocol, PureState
from delocalization_power.gallery import adqc, cnot, controlled_random, heisenberg, identity
from delocalization_power.protocol import (
    PLUS_STATE,
    adqc_protocol,
    adqc_scenario,
    audit_protocol,
    check_completeness,
    hermitianize_protocol,
    simulate_branches,
    synthesize_protocol,
    verify_ancilla_mode,
    verify_relocalization,
)

P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)
I2 = np.eye(2, dtype=complex)


@pytest.fixture
def cnot_protocol():
    form = ControlledForm(d=2, u_a=I2, u_b=I2, v_a=I2, v_b=I2, blocks=[(P0, I2), (P1, PAULI_X)])
    return synthesize_protocol(form)


class TestSynthesis:
    def test_cnot_protocol_operators(self, cnot_protocol):
        assert cnot_protocol.branches == 2
        assert np.allclose(cnot_protocol.alice_ops[0], P0)
        assert np.allclose(cnot_protocol.bob_corrections[1], PAULI_X)

    def test_rejects_invalid_form(self):
        form = ControlledForm(d=2, u_a=I2, u_b=I2, v_a=I2, v_b=I2, blocks=[(P0, I2)])
        with pytest.raises(InvariantViolation):
            synthesize_protocol(form)

    def test_completeness(self, cnot_protocol):
        assert check_completeness(cnot_protocol.alice_ops) < 1e-12
        assert check_completeness([P0]) == pytest.approx(1.0)

    def test_completeness_rejects_mixed_shapes(self):
        with pytest.raises(DimensionError):
            check_completeness([P0, np.eye(3)])

    def test_audit(self):
        protocol = classify_gate(controlled_random(d=3, seed=1)).protocol
        completeness, correction = audit_protocol(protocol)
        assert completeness < 1e-9
        assert correction < 1e-9


class TestSimulateBranches:
    def test_cnot_branches(self, cnot_gate, cnot_protocol):
        psi_a = PureState.from_vector([1, 2j])
        psi_b = PureState.from_vector([3, 1 - 1j])
        branches = simulate_branches(cnot_gate, cnot_protocol, psi_a, psi_b)
        assert [b.probability for b in branches] == pytest.approx([0.2, 0.8])
        assert all(b.bob_fidelity == pytest.approx(1.0) for b in branches)

    def test_zero_probability_branch_is_not_scored(self, cnot_gate, cnot_protocol):
        zero = PureState(np.array([1, 0], dtype=complex))
        branches = simulate_branches(cnot_gate, cnot_protocol, zero, PLUS_STATE)
        assert branches[1].probability == 0.0
        assert branches[1].bob_fidelity is None
        assert branches[1].alice_residual is None

    def test_dimension_mismatch(self, cnot_protocol):
        with pytest.raises(DimensionError):
            simulate_branches(identity(3), cnot_protocol, PLUS_STATE, PLUS_STATE)

    def test_alice_residual_independent_of_bob_input(self, rng):
        g = controlled_random(d=3, seed=11)
        protocol = classify_gate(g).protocol
        psi_a = random_state(3, rng)
        runs = [simulate_branches(g, protocol, psi_a, random_state(3, rng)) for _ in range(10)]
        reference = runs[0]
        for branches in runs[1:]:
            for first, other in zip(reference, branches):
                assert other.probability == pytest.approx(first.probability, abs=1e-9)
                assert other.bob_fidelity == pytest.approx(1.0, abs=1e-9)
                assert np.allclose(other.alice_residual, first.alice_residual, atol=1e-9)


class TestVerifyRelocalization:
    def test_cnot_passes(self, cnot_gate, cnot_protocol):
        report = verify_relocalization(cnot_gate, cnot_protocol, trials=50, seed=7)
        assert report.verdict
        assert report.min_fidelity >= 1 - 1e-9
        assert report.probability_defect <= 1e-9
        assert report.residual_deviation <= 1e-9
        assert len(report.branches) == 100

    def test_wrong_corrections_fail(self, cnot_gate):
        protocol = OneWayProtocol(d=2, alice_ops=[P0, P1], bob_corrections=[I2, I2])
        assert not verify_relocalization(cnot_gate, protocol, trials=10, seed=0).verdict

    def test_deterministic_across_workers(self):
        g = controlled_random(d=3, seed=6)
        protocol = classify_gate(g).protocol
        serial = verify_relocalization(g, protocol, trials=12, seed=3, workers=1)
        threaded = verify_relocalization(g, protocol, trials=12, seed=3, workers=4)
        assert serial.min_fidelity == threaded.min_fidelity
        assert [b.probability for b in serial.branches] == [b.probability for b in threaded.branches]

    def test_requires_trials(self, cnot_gate, cnot_protocol):
        with pytest.raises(ValueError, match="trials"):
            verify_relocalization(cnot_gate, cnot_protocol, trials=0)

    def test_no_guess_relocalizes_heisenberg(self):
        g = heisenberg(0.2)
        corrections = [I2, PAULI_X, PAULI_Y, PAULI_Z, HADAMARD]
        for polar in np.linspace(0, np.pi, 5):
            for azimuth in (0.0, np.pi / 2):
                up = np.array([np.cos(polar / 2), np.exp(1j * azimuth) * np.sin(polar / 2)])
                down = np.array([-np.conj(up[1]), np.conj(up[0])])
                alice_ops = [np.outer(up, up.conj()), np.outer(down, down.conj())]
                assert check_completeness(alice_ops) < 1e-12
                for w0 in corrections:
                    for w1 in corrections:
                        protocol = OneWayProtocol(d=2, alice_ops=alice_ops, bob_corrections=[w0, w1])
                        report = verify_relocalization(g, protocol, trials=3, seed=0)
                        assert not report.verdict, (polar, azimuth)


class TestAncillaMode:
    def test_cnot_passes(self, cnot_gate, cnot_protocol):
        report = verify_ancilla_mode(cnot_gate, cnot_protocol)
        assert report.verdict
        assert report.probability_sum == pytest.approx(1.0)
        assert report.max_product_residual < 1e-12

    def test_adqc_protocol_fails_without_fixed_input(self, adqc_gate):
        report = verify_ancilla_mode(adqc_gate, adqc_protocol())
        assert not report.verdict
        assert report.max_product_residual > 0.1


class TestHermitianize:
    def test_preserves_relocalization(self):
        g = controlled_random(d=3, n_blocks=2, seed=9)
        protocol = classify_gate(g).protocol
        positive = hermitianize_protocol(protocol)
        for m in positive.alice_ops:
            assert np.allclose(m, m.conj().T)
            assert np.min(np.linalg.eigvalsh(m)) > -1e-12
        assert check_completeness(positive.alice_ops) < 1e-9
        assert verify_relocalization(g, positive, trials=10, seed=1).verdict


class TestAdqcScenario:
    def test_fixed_plus_input_relocalizes(self):
        report = adqc_scenario(trials=50, seed=0)
        assert report.verdict
        assert report.min_fidelity == pytest.approx(1.0, abs=1e-9)

    def test_same_gate_is_class2(self):
        assert classify_gate(adqc()).label == "Class2"

    def test_random_alice_input_breaks_protocol(self):
        assert not adqc_scenario(trials=10, seed=0, psi_a=None).verdict

    def test_zero_alice_input_breaks_protocol(self):
        zero = PureState(np.array([1, 0], dtype=complex))
        report = adqc_scenario(trials=10, seed=0, psi_a=zero)
        assert not report.verdict
        assert report.min_fidelity < 1 - 1e-6

    def test_protocol_operators(self):
        protocol = adqc_protocol()
        assert np.allclose(protocol.bob_corrections[0], HADAMARD)
        assert np.allclose(protocol.bob_corrections[1], PAULI_Z @ HADAMARD)
        assert check_completeness(protocol.alice_ops) < 1e-12
