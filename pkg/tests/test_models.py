"""Tests for the models module."""

import numpy as np
import pytest

from delocalization_power.core.errors import (
    DimensionError,
    InvariantViolation,
    NonUnitaryError,
    NormalizationError,
)
from delocalization_power.core.linalg import HADAMARD, PAULI_X, PAULI_Z
from delocalization_power.core.models import (
    CLASS_1,
    CLASS_2,
    Classification,
    ClassificationDiagnostics,
    ControlledForm,
    Gate,
    GateSpec,
    OneWayProtocol,
    PureState,
)

ZERO = np.diag([1, 0]).astype(complex)
ONE = np.diag([0, 1]).astype(complex)
I2 = np.eye(2, dtype=complex)


def _cnot_form() -> ControlledForm:
    return ControlledForm(d=2, u_a=I2, u_b=I2, v_a=I2, v_b=I2, blocks=[(ZERO, I2), (ONE, PAULI_X)])


class TestGate:
    def test_gate_creation(self):
        gate = Gate(2, np.eye(4), name="identity")
        assert gate.d == 2
        assert gate.dim == 4
        assert gate.matrix.dtype == complex

    def test_gate_matrix_is_read_only(self):
        gate = Gate(2, np.eye(4))
        with pytest.raises(ValueError):
            gate.matrix[0, 0] = 2

    def test_gate_rejects_wrong_shape(self):
        with pytest.raises(DimensionError, match="16x16"):
            Gate(4, np.eye(4))

    def test_gate_rejects_small_d(self):
        with pytest.raises(DimensionError):
            Gate(1, np.eye(1))

    def test_gate_rejects_non_unitary(self):
        with pytest.raises(NonUnitaryError):
            Gate(2, 1.01 * np.eye(4))

    def test_gate_rejects_nan(self):
        matrix = np.eye(4, dtype=complex)
        matrix[0, 0] = np.nan
        with pytest.raises(InvariantViolation):
            Gate(2, matrix)

    def test_gate_custom_tolerance(self):
        gate = Gate(2, (1 + 1e-8) * np.eye(4), tol_unitary=1e-6)
        assert gate.tol_unitary == 1e-6


class TestPureState:
    def test_state_from_vector_normalizes(self):
        state = PureState.from_vector([3, 4])
        assert np.allclose(state.amplitudes, [0.6, 0.8])

    def test_state_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            PureState(np.array([1.0, 1.0]))

    def test_state_rejects_zero_vector(self):
        with pytest.raises(NormalizationError):
            PureState.from_vector([0, 0])

    def test_projector(self):
        state = PureState(np.array([0, 1], dtype=complex))
        assert np.allclose(state.projector(), ONE)


class TestControlledForm:
    def test_cnot_reconstructs(self):
        form = _cnot_form()
        expected = np.kron(ZERO, I2) + np.kron(ONE, PAULI_X)
        assert np.allclose(form.reconstruct(), expected)
        form.validate(source=expected)

    def test_validate_rejects_non_orthogonal_projectors(self):
        plus = np.full((2, 2), 0.5, dtype=complex)
        form = ControlledForm(d=2, u_a=I2, u_b=I2, v_a=I2, v_b=I2, blocks=[(ZERO, I2), (plus, PAULI_X)])
        with pytest.raises(InvariantViolation):
            form.validate()

    def test_validate_rejects_incomplete_projectors(self):
        form = ControlledForm(d=2, u_a=I2, u_b=I2, v_a=I2, v_b=I2, blocks=[(ZERO, I2)])
        with pytest.raises(InvariantViolation, match="sum to the identity"):
            form.validate()

    def test_validate_rejects_shared_targets(self):
        form = ControlledForm(
            d=2, u_a=I2, u_b=I2, v_a=I2, v_b=I2, blocks=[(ZERO, PAULI_Z), (ONE, -PAULI_Z)]
        )
        with pytest.raises(InvariantViolation, match="share"):
            form.validate()

    def test_validate_rejects_non_unitary_local(self):
        form = ControlledForm(
            d=2, u_a=2 * I2, u_b=I2, v_a=I2, v_b=I2, blocks=[(ZERO, I2), (ONE, PAULI_X)]
        )
        with pytest.raises(NonUnitaryError, match="u_a"):
            form.validate()

    def test_validate_rejects_wrong_source(self):
        with pytest.raises(InvariantViolation, match="reconstruction"):
            _cnot_form().validate(source=np.eye(4))


class TestOneWayProtocol:
    def test_protocol_branches(self):
        protocol = OneWayProtocol(d=2, alice_ops=[ZERO, ONE], bob_corrections=[I2, HADAMARD])
        assert protocol.branches == 2

    def test_protocol_rejects_length_mismatch(self):
        with pytest.raises(InvariantViolation, match="corrections"):
            OneWayProtocol(d=2, alice_ops=[ZERO, ONE], bob_corrections=[I2])

    def test_protocol_rejects_empty(self):
        with pytest.raises(InvariantViolation):
            OneWayProtocol(d=2, alice_ops=[], bob_corrections=[])

    def test_protocol_rejects_shape(self):
        with pytest.raises(DimensionError):
            OneWayProtocol(d=3, alice_ops=[np.eye(3)], bob_corrections=[I2])


class TestClassification:
    def test_class1_requires_form(self):
        with pytest.raises(InvariantViolation):
            Classification(CLASS_1, None, ClassificationDiagnostics(2, [1.0, 1.0]))

    def test_class2_forbids_form(self):
        with pytest.raises(InvariantViolation):
            Classification(CLASS_2, _cnot_form(), ClassificationDiagnostics(2, [1.0, 1.0]))

    def test_unknown_label(self):
        with pytest.raises(InvariantViolation):
            Classification("Class3", None, ClassificationDiagnostics(4, []))

    def test_is_class1(self):
        result = Classification(CLASS_1, _cnot_form(), ClassificationDiagnostics(2, [1.0, 1.0]))
        assert result.is_class1


class TestGateSpec:
    def test_str_without_params(self):
        assert str(GateSpec("cnot")) == "cnot"

    def test_str_with_params(self):
        spec = GateSpec("controlled_random", {"d": 3, "seed": 4})
        assert str(spec) == "controlled_random:d=3,seed=4"
        assert spec.d == 3

    def test_default_d(self):
        assert GateSpec("cnot").d == 2
