"""
Tests for the network engine: forward, loss, gradients and training.

Gradient checks compare against central finite differences (h = 1e-3) on a
float64 copy of the model, skipping coordinates whose perturbation crosses a
ReLU kink.
"""
# Third-Party Imports
import numpy as np
import pytest

# Project-Specific Imports
from cslb.errors import InvalidInputError, TrainingError
from cslb.nn import Model, build_model, train, evaluate_accuracy, loss, softmax
from cslb.nn.layers import Dense

from conftest import linear_model

H = 1e-3
REL_TOL = 1e-4


def _close(analytic: float, numeric: float) -> bool:
    return abs(analytic - numeric) <= REL_TOL * max(abs(analytic), abs(numeric)) + 1e-7


def _same_pattern(model: Model, a: np.ndarray, b: np.ndarray) -> bool:
    return all(np.array_equal(p, q) for p, q in zip(model.activation_pattern(a), model.activation_pattern(b)))


# =============================================================================
# forward
# =============================================================================

class TestForward:

    def test_identity_dense(self):
        model = Model([Dense(2, 2, np.eye(2, dtype=np.float32), np.zeros(2, dtype=np.float32))], (2,), 2)
        np.testing.assert_array_equal(model.forward(np.array([1.0, 2.0])), [1.0, 2.0])

    def test_zero_weights_give_zero_logits(self, rng):
        model = linear_model(np.zeros((3, 4)))
        np.testing.assert_array_equal(model.forward(rng.random((1, 1, 4))), np.zeros(3))

    def test_mlp_matches_dense_algebra(self, rng):
        model = build_model('mlp', (1, 1, 4), 3, seed=3, hidden=[5])
        x = rng.random((1, 1, 4)).astype(np.float32)
        w1, b1, w2, b2 = [p.astype(np.float64) for p in model.params]
        hidden = np.maximum(w1 @ x.ravel().astype(np.float64) + b1, 0.0)
        np.testing.assert_allclose(model.forward(x), w2 @ hidden + b2, atol=1e-5)

    def test_batch_matches_single(self, tiny_cnn, rng):
        xs = rng.random((4, 1, 6, 6)).astype(np.float32)
        batch = tiny_cnn.forward(xs)
        for i in range(4):
            np.testing.assert_allclose(batch[i], tiny_cnn.forward(xs[i]), rtol=1e-6, atol=1e-6)

    def test_shape_mismatch(self, tiny_cnn):
        with pytest.raises(InvalidInputError):
            tiny_cnn.forward(np.zeros((1, 5, 5), dtype=np.float32))

    def test_ties_resolve_to_lowest_index(self):
        model = linear_model(np.zeros((4, 2)))
        assert int(model.predict(np.ones((1, 1, 2), dtype=np.float32))) == 0

    def test_layer_shapes_must_compose(self):
        with pytest.raises(InvalidInputError):
            Model([Dense(3, 2)], (3,), 5)


# =============================================================================
# loss / softmax
# =============================================================================

class TestLoss:

    def test_uniform_logits(self):
        assert loss(np.zeros(7), 3) == pytest.approx(np.log(7), abs=1e-12)

    def test_saturated_correct_class(self):
        logits = np.zeros(5)
        logits[2] = 1000.0
        assert loss(logits, 2) == pytest.approx(0.0, abs=1e-12)

    def test_two_logit_value(self):
        assert loss(np.array([1.0, 2.0]), 0) == pytest.approx(np.log1p(np.e), abs=1e-6)

    def test_label_out_of_range(self):
        with pytest.raises(InvalidInputError):
            loss(np.zeros(3), 3)

    def test_softmax_normalized(self, rng):
        logits = rng.normal(0, 50, size=(20, 10))
        np.testing.assert_allclose(softmax(logits).sum(axis=-1), 1.0, atol=1e-6)


# =============================================================================
# input_gradient
# =============================================================================

class TestInputGradient:

    def test_zero_network(self, rng):
        model = linear_model(np.zeros((3, 4)))
        grad = model.input_gradient(rng.random((1, 1, 4)).astype(np.float32), 1)
        np.testing.assert_array_equal(grad, np.zeros((1, 1, 4)))

    def test_closed_form_for_linear_model(self, rng):
        weight = rng.normal(size=(4, 3))
        bias = rng.normal(size=4)
        model = linear_model(weight, bias).astype(np.float64)
        x = rng.random((1, 1, 3))
        probs = softmax(weight @ x.ravel() + bias)
        expected = (probs - np.eye(4)[2]) @ weight
        np.testing.assert_allclose(model.input_gradient(x, 2).ravel(), expected, rtol=1e-4, atol=1e-6)

    @pytest.mark.parametrize('seed', range(20))
    def test_finite_differences(self, seed):
        rng = np.random.default_rng(seed)
        model = build_model('desk-cnn', (1, 6, 6), 3, seed=seed).astype(np.float64)
        x = rng.random((1, 6, 6))
        label = int(rng.integers(3))
        grad = model.input_gradient(x, label)

        checked = 0
        for index in rng.choice(x.size, size=10, replace=False):
            step = np.zeros(x.size)
            step[index] = H
            plus, minus = x + step.reshape(x.shape), x - step.reshape(x.shape)
            if not (_same_pattern(model, plus, x) and _same_pattern(model, minus, x)):
                continue
            numeric = (loss(model.forward(plus), label) - loss(model.forward(minus), label)) / (2 * H)
            assert _close(grad.ravel()[index], numeric)
            checked += 1
        assert checked > 0

    def test_batch_rows_are_per_sample(self, tiny_cnn, rng):
        xs = rng.random((3, 1, 6, 6)).astype(np.float32)
        labels = np.array([0, 1, 2])
        batch = tiny_cnn.input_gradient(xs, labels)
        for i in range(3):
            np.testing.assert_allclose(batch[i], tiny_cnn.input_gradient(xs[i], labels[i]), rtol=1e-5, atol=1e-7)


# =============================================================================
# param_gradients
# =============================================================================

class TestParamGradients:

    def test_duplicated_example_equals_single(self, tiny_cnn, rng):
        x = rng.random((1, 1, 6, 6)).astype(np.float32)
        _, single = tiny_cnn.param_gradients(x, np.array([1]))
        _, double = tiny_cnn.param_gradients(np.concatenate([x, x]), np.array([1, 1]))
        for a, b in zip(single, double):
            np.testing.assert_allclose(a, b, rtol=1e-5, atol=1e-7)

    def test_empty_batch(self, tiny_cnn):
        with pytest.raises(InvalidInputError):
            tiny_cnn.param_gradients(np.zeros((0, 1, 6, 6), dtype=np.float32), np.array([], dtype=np.int64))

    def test_shapes_match_params(self, tiny_cnn, rng):
        _, grads = tiny_cnn.param_gradients(rng.random((2, 1, 6, 6)), np.array([0, 2]))
        assert [g.shape for g in grads] == [p.shape for p in tiny_cnn.params]

    @pytest.mark.parametrize('seed', range(20))
    def test_finite_differences(self, seed):
        rng = np.random.default_rng(100 + seed)
        model = build_model('mlp', (1, 2, 3), 3, seed=seed, hidden=[6]).astype(np.float64)
        xs = rng.random((4, 1, 2, 3))
        labels = rng.integers(3, size=4)
        _, grads = model.param_gradients(xs, labels)

        def batch_loss(params):
            candidate = model.with_params(params)
            return float(np.mean([loss(candidate.forward(x), y) for x, y in zip(xs, labels)]))

        checked = 0
        for _ in range(10):
            which = int(rng.integers(len(model.params)))
            index = int(rng.integers(model.params[which].size))
            plus = [p.copy() for p in model.params]
            minus = [p.copy() for p in model.params]
            plus[which].reshape(-1)[index] += H
            minus[which].reshape(-1)[index] -= H

            kinks = [model.with_params(plus).activation_pattern(xs), model.with_params(minus).activation_pattern(xs)]
            base = model.activation_pattern(xs)
            if not all(np.array_equal(a, b) for pattern in kinks for a, b in zip(pattern, base)):
                continue
            numeric = (batch_loss(plus) - batch_loss(minus)) / (2 * H)
            assert _close(grads[which].reshape(-1)[index], numeric)
            checked += 1
        assert checked > 0


# =============================================================================
# train
# =============================================================================

class TestTrain:

    def test_zero_learning_rate_keeps_params(self, blob_split):
        train_set, _ = blob_split
        model = build_model('mlp', train_set.sample_shape, 2, seed=0, hidden=[8])
        trained = train(model, train_set, epochs=2, learning_rate=0.0, batch_size=16, seed=0)
        for a, b in zip(model.params, trained.params):
            np.testing.assert_array_equal(a, b)

    def test_deterministic(self, blob_split):
        train_set, _ = blob_split
        model = build_model('mlp', train_set.sample_shape, 2, seed=0, hidden=[8])
        first = train(model, train_set, epochs=2, learning_rate=0.1, batch_size=16, seed=7)
        second = train(model, train_set, epochs=2, learning_rate=0.1, batch_size=16, seed=7)
        for a, b in zip(first.params, second.params):
            np.testing.assert_array_equal(a, b)

    def test_blobs_reach_high_accuracy(self, trained_mlp, blob_split):
        _, test_set = blob_split
        assert evaluate_accuracy(trained_mlp, test_set) >= 0.99

    def test_divergence_names_epoch(self, blob_split):
        train_set, _ = blob_split
        model = build_model('mlp', train_set.sample_shape, 2, seed=0, hidden=[8])
        with np.errstate(all='ignore'), pytest.raises(TrainingError) as excinfo:
            train(model, train_set, epochs=3, learning_rate=1e30, batch_size=16, seed=0)
        assert excinfo.value.epoch >= 1
        assert f'epoch {excinfo.value.epoch}' in str(excinfo.value)

    def test_rejects_out_of_range_labels(self, blob_split):
        train_set, _ = blob_split
        model = build_model('linear', train_set.sample_shape, 1, seed=0)
        with pytest.raises(InvalidInputError):
            train(model, train_set, epochs=1, learning_rate=0.1, batch_size=16, seed=0)
