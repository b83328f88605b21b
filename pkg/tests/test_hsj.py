"""
Tests for the decision-based boundary attack.
"""
# Third-Party Imports
import numpy as np
import pytest

# Project-Specific Imports
from cslb.attacks import Oracle, AttackConfig, run_attack, boundary_binary_search
from cslb.defenses import DefenseConfig

from conftest import linear_model

NONE = DefenseConfig(kind='none')


class PoisonedOracle(Oracle):
    """Returns garbage probabilities next to the true label."""

    def _evaluate(self, x, nonce):
        _, label = super()._evaluate(x, nonce)
        return np.full(self.model.num_classes, np.nan), label


def _run(model, x, y, attack, budget, oracle_cls=Oracle, defense=NONE):
    oracle = oracle_cls(model, defense, budget=budget, mode='decision', nonce_prefix=(0,), x0=x,
                        epsilon=attack.epsilon)
    return run_attack(oracle, attack, x, y, nonce=(0,))


class TestBinarySearch:

    @staticmethod
    def _above_diagonal(point):
        return bool(point.ravel()[1] > point.ravel()[0])

    def test_blend_localizes_linear_boundary(self):
        x0 = np.array([0.8, 0.2], dtype=np.float32)
        x_adv = np.array([0.2, 0.8], dtype=np.float32)
        point, high = boundary_binary_search(self._above_diagonal, x0, x_adv, 1e-3, 'blend')
        assert high == pytest.approx(0.5, abs=1e-3)
        assert self._above_diagonal(point)

    def test_linf_localizes_linear_boundary(self):
        x0 = np.array([0.8, 0.2], dtype=np.float32)
        x_adv = np.array([0.2, 0.8], dtype=np.float32)
        point, radius = boundary_binary_search(self._above_diagonal, x0, x_adv, 1e-3, 'linf')
        assert radius == pytest.approx(0.3, abs=1e-3)
        assert np.max(np.abs(point - x0)) == pytest.approx(radius, abs=1e-6)


class TestHsjLite:

    def test_large_radius_succeeds(self, two_class_linear):
        x = np.array([[[0.6, 0.4]]], dtype=np.float32)
        result = _run(two_class_linear, x, 0, AttackConfig(kind='hsj-lite', epsilon=1.0), budget=500)
        assert result.success
        assert not result.init_failure
        assert result.distance <= 1.0
        assert result.linf <= 1.0 + 1e-6

    def test_small_budget_fails(self, two_class_linear):
        x = np.array([[[0.95, 0.05]]], dtype=np.float32)
        result = _run(two_class_linear, x, 0, AttackConfig(kind='hsj-lite', epsilon=0.05), budget=5)
        assert not result.success
        assert result.queries_used <= 5

    def test_init_failure_when_nothing_is_adversarial(self):
        # A single-class model can never be fooled
        model = linear_model(np.zeros((1, 4)))
        x = np.full((1, 1, 4), 0.5, dtype=np.float32)
        result = _run(model, x, 0, AttackConfig(kind='hsj-lite', epsilon=0.2), budget=2000)
        assert result.init_failure
        assert not result.success
        assert result.queries_used == 1000
        np.testing.assert_array_equal(result.delta, np.zeros_like(x))

    def test_delta_stays_in_ball(self, tiny_cnn, rng):
        x = rng.random((1, 6, 6)).astype(np.float32)
        attack = AttackConfig(kind='hsj-lite', epsilon=0.05, hsj_batch=10)
        result = _run(tiny_cnn, x, int(tiny_cnn.predict(x)), attack, budget=300)
        assert result.linf <= attack.epsilon + 1e-6
        if result.success:
            assert result.distance <= attack.epsilon + 1e-6

    def test_sees_labels_only(self, tiny_cnn, rng):
        x = rng.random((1, 6, 6)).astype(np.float32)
        y = int(tiny_cnn.predict(x))
        attack = AttackConfig(kind='hsj-lite', epsilon=0.1, hsj_batch=10, seed=2)
        honest = _run(tiny_cnn, x, y, attack, budget=300)
        poisoned = _run(tiny_cnn, x, y, attack, budget=300, oracle_cls=PoisonedOracle)
        np.testing.assert_array_equal(honest.delta, poisoned.delta)
        assert honest.to_dict() == poisoned.to_dict()
        assert honest.loss_history == poisoned.loss_history

    def test_noise_defense_is_deterministic(self, tiny_cnn, rng):
        x = rng.random((1, 6, 6)).astype(np.float32)
        y = int(tiny_cnn.predict(x))
        attack = AttackConfig(kind='hsj-lite', epsilon=0.1, hsj_batch=10)
        defense = DefenseConfig(kind='snd', sigma=0.05)
        first = _run(tiny_cnn, x, y, attack, budget=200, defense=defense)
        second = _run(tiny_cnn, x, y, attack, budget=200, defense=defense)
        assert first.to_dict() == second.to_dict()
