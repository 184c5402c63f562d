"""Tests for the two-qubit canonical decomposition."""

import numpy as np
import pytest

from delocalization_power.analysis.canonical import (
    kraus_cirac_decompose,
    kron_factor,
    theta_distance,
)
from delocalization_power.analysis.schmidt import schmidt_rank
from delocalization_power.core.errors import DimensionError
from delocalization_power.core.linalg import (
    haar_random_unitary,
    interaction_unitary,
    kron,
    unitarity_residual,
)
from delocalization_power.core.models import CanonicalForm, Gate
from delocalization_power.gallery import adqc, cnot, cz, haar, heisenberg, identity, swap

QUARTER = np.pi / 4


def _in_chamber(theta, atol=1e-9) -> bool:
    x, y, z = theta
    on_wall = abs(x - QUARTER) < atol
    return QUARTER + atol >= x >= y - atol and y + atol >= abs(z) and not (on_wall and z < -atol)


def _dress(g: Gate, rng) -> Gate:
    before = kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng))
    after = kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng))
    return Gate(2, np.exp(1j * rng.uniform(0, 2 * np.pi)) * before @ g.matrix @ after)


class TestKronFactor:
    def test_recovers_product(self, rng):
        a = haar_random_unitary(2, rng)
        b = haar_random_unitary(2, rng)
        x, y = kron_factor(kron(a, b))
        assert np.allclose(kron(x, y), kron(a, b))
        assert unitarity_residual(x) < 1e-12
        assert unitarity_residual(y) < 1e-12


class TestKnownGates:
    def test_cnot(self):
        form = kraus_cirac_decompose(cnot())
        assert form.theta == pytest.approx((QUARTER, 0.0, 0.0), abs=1e-8)

    def test_cz_matches_cnot(self):
        form = kraus_cirac_decompose(cz())
        assert form.theta == pytest.approx((QUARTER, 0.0, 0.0), abs=1e-8)

    def test_heisenberg(self):
        form = kraus_cirac_decompose(heisenberg(0.1))
        assert form.theta == pytest.approx((0.1, 0.1, 0.1), abs=1e-8)

    def test_identity(self):
        form = kraus_cirac_decompose(identity())
        assert form.theta == pytest.approx((0.0, 0.0, 0.0), abs=1e-8)

    def test_swap(self):
        form = kraus_cirac_decompose(swap())
        assert form.theta == pytest.approx((QUARTER, QUARTER, QUARTER), abs=1e-8)

    def test_adqc_is_swap_times_cz(self):
        form = kraus_cirac_decompose(adqc())
        assert form.theta == pytest.approx((QUARTER, QUARTER, 0.0), abs=1e-8)

    def test_pure_interaction(self):
        theta = (0.5, 0.3, -0.1)
        form = kraus_cirac_decompose(Gate(2, interaction_unitary(theta)))
        assert form.theta == pytest.approx(theta, abs=1e-8)

    def test_folds_into_chamber(self):
        form = kraus_cirac_decompose(Gate(2, interaction_unitary((1.3, -0.9, 2.2))))
        assert _in_chamber(form.theta)

    def test_rejects_qutrits(self):
        with pytest.raises(DimensionError, match="two qubits"):
            kraus_cirac_decompose(identity(3))


class TestReconstruction:
    def test_haar_gates_reconstruct(self):
        for seed in range(200):
            g = haar(d=2, seed=seed)
            form = kraus_cirac_decompose(g)
            assert np.linalg.norm(form.reconstruct() - g.matrix) < 1e-8, seed
            assert _in_chamber(form.theta), seed

    def test_local_factors_unitary(self):
        form = kraus_cirac_decompose(haar(d=2, seed=11))
        for factor in (form.pre_a, form.pre_b, form.post_a, form.post_b):
            assert unitarity_residual(factor) < 1e-9

    def test_theta_is_local_unitary_invariant(self, rng):
        for seed in (0, 1):
            g = haar(d=2, seed=seed)
            reference = kraus_cirac_decompose(g)
            for _ in range(50):
                dressed = kraus_cirac_decompose(_dress(g, rng))
                assert theta_distance(reference, dressed) < 1e-8

    def test_cnot_theta_invariant_under_dressing(self, rng):
        for _ in range(20):
            form = kraus_cirac_decompose(_dress(cnot(), rng))
            assert form.theta == pytest.approx((QUARTER, 0.0, 0.0), abs=1e-8)


SWEEP = [0.0, 1e-3, 0.05, 0.2, 0.5, QUARTER]
CHAMBER_GRID = [(x, y) for x in SWEEP for y in SWEEP if y <= x]


class TestRankConsistency:
    """θy = θz = 0 exactly when the operator Schmidt rank is at most 2."""

    @pytest.mark.parametrize("theta_x, theta_y", CHAMBER_GRID)
    def test_interaction_grid(self, theta_x, theta_y, rng):
        g = _dress(Gate(2, interaction_unitary((theta_x, theta_y, 0.0))), rng)
        theta = kraus_cirac_decompose(g).theta
        flat = abs(theta[1]) <= 1e-7 and abs(theta[2]) <= 1e-7
        assert flat == (schmidt_rank(g) <= 2)
        assert flat == (theta_y == 0.0)


class TestThetaDistance:
    def _form(self, theta) -> CanonicalForm:
        eye = np.eye(2)
        return CanonicalForm(eye, eye, eye, eye, theta, 0.0)

    def test_zero_for_equal(self):
        assert theta_distance(self._form((0.3, 0.2, 0.1)), self._form((0.3, 0.2, 0.1))) == 0.0

    def test_wall_mirror(self):
        a = self._form((QUARTER, 0.2, 0.1))
        b = self._form((QUARTER, 0.2, -0.1))
        assert theta_distance(a, b) == pytest.approx(0.0, abs=1e-15)

    def test_distinct_points(self):
        assert theta_distance(self._form((0.3, 0.2, 0.1)), self._form((0.3, 0.1, 0.1))) == pytest.approx(0.1)
