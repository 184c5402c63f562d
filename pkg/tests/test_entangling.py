"""Tests for the entangling-power estimator and the contrast table."""

import numpy as np
import pytest

from delocalization_power.analysis.entangling import (
    contrast,
    entangling_power_estimate,
    output_entanglement,
)
from delocalization_power.core.linalg import entropy_bits, haar_random_unitary, kron
from delocalization_power.core.models import Gate
from delocalization_power.gallery import REGISTRY, build, cnot, heisenberg, identity, swap

RESTARTS = 16


def _random_oracle(g, samples: int = 10_000, seed: int = 99) -> float:
    """Best output entanglement over random product inputs (vectorized sampling)."""
    rng = np.random.default_rng(seed)
    d = g.d
    a = rng.standard_normal((samples, d)) + 1j * rng.standard_normal((samples, d))
    b = rng.standard_normal((samples, d)) + 1j * rng.standard_normal((samples, d))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    inputs = np.einsum("si,sj->sij", a, b).reshape(samples, d * d)
    outputs = (inputs @ g.matrix.T).reshape(samples, d, d)
    weights = np.linalg.svd(outputs, compute_uv=False) ** 2
    return max(entropy_bits(row) for row in weights)


class TestOutputEntanglement:
    def test_cnot_on_plus_zero(self, cnot_gate):
        plus = np.array([1, 1]) / np.sqrt(2)
        zero = np.array([1, 0])
        assert output_entanglement(cnot_gate, plus, zero) == pytest.approx(1.0)

    def test_scale_invariant(self, cnot_gate):
        plus = np.array([1, 1])
        zero = np.array([3, 0])
        assert output_entanglement(cnot_gate, plus, zero) == pytest.approx(1.0)

    def test_zero_vector(self, cnot_gate):
        assert output_entanglement(cnot_gate, np.zeros(2), np.array([1, 0])) == 0.0


class TestEntanglingPower:
    def test_cnot_one_ebit(self, cnot_gate):
        result = entangling_power_estimate(cnot_gate, restarts=RESTARTS, seed=0)
        assert result.value == pytest.approx(1.0, abs=1e-3)
        assert result.restarts == RESTARTS
        assert len(result.restart_values) == RESTARTS

    @pytest.mark.parametrize("gate", [identity(), swap()], ids=["identity", "swap"])
    def test_non_entangling_gates(self, gate):
        assert entangling_power_estimate(gate, restarts=4, seed=0).value <= 1e-6

    def test_weak_heisenberg(self, weak_heisenberg):
        assert entangling_power_estimate(weak_heisenberg, restarts=RESTARTS, seed=0).value <= 0.01

    def test_argmax_reproduces_value(self):
        g = heisenberg(0.3)
        result = entangling_power_estimate(g, restarts=8, seed=2)
        assert output_entanglement(g, result.argmax_a, result.argmax_b) == pytest.approx(result.value, abs=1e-9)

    def test_value_bounded_by_log_d(self):
        result = entangling_power_estimate(build("haar:d=3,seed=1"), restarts=4, seed=0)
        assert 0.0 <= result.value <= np.log2(3)

    def test_more_restarts_never_worse(self):
        g = build("haar:d=2,seed=5")
        few = entangling_power_estimate(g, restarts=4, seed=1)
        many = entangling_power_estimate(g, restarts=12, seed=1)
        assert many.value >= few.value

    def test_deterministic_across_workers(self):
        g = build("haar:d=2,seed=6")
        serial = entangling_power_estimate(g, restarts=6, seed=4, workers=1)
        threaded = entangling_power_estimate(g, restarts=6, seed=4, workers=3)
        assert serial.restart_values == threaded.restart_values

    def test_requires_restarts(self, cnot_gate):
        with pytest.raises(ValueError, match="restarts"):
            entangling_power_estimate(cnot_gate, restarts=0)

    @pytest.mark.parametrize("name", sorted(REGISTRY))
    def test_beats_random_sampling(self, name):
        g = build(name)
        estimate = entangling_power_estimate(g, restarts=32, seed=0).value
        assert estimate >= _random_oracle(g) - 1e-9

    @pytest.mark.parametrize("spec", ["cnot", "haar:d=2,seed=3"])
    def test_local_unitary_invariance(self, spec):
        g = build(spec)
        rng = np.random.default_rng(31)
        before = kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng))
        after = kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng))
        dressed = Gate(2, before @ g.matrix @ after)
        reference = entangling_power_estimate(g, restarts=32, seed=0).value
        assert entangling_power_estimate(dressed, restarts=32, seed=0).value == pytest.approx(reference, abs=2e-3)


class TestContrast:
    def test_weak_heisenberg_versus_cnot(self):
        rows = contrast([heisenberg(0.01), cnot()], restarts=RESTARTS, seed=0)
        weak, strong = rows
        assert weak.label == "Class2" and weak.entangling_power <= 0.01
        assert strong.label == "Class1" and strong.entangling_power == pytest.approx(1.0, abs=1e-3)
        assert weak.schmidt_rank == 4 and strong.schmidt_rank == 2
        assert weak.gate == "heisenberg:alpha=0.01"
