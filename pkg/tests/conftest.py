"""
Shared fixtures: seeded synthetic data, small trained and untrained models,
and an instrumented model that counts every evaluation.
"""
# Standard Imports
import threading

# Third-Party Imports
import numpy as np
import pytest

# Project-Specific Imports
from cslb.data import synth_blobs, train_test_split
from cslb.nn import Model, build_model, train
from cslb.nn.layers import Dense, Flatten


class CountingModel(Model):
    """Model wrapper that counts forward passes and loss/gradient passes."""

    def __init__(self, model: Model):
        super().__init__(model.layers, model.input_shape, model.num_classes)
        self._lock = threading.Lock()
        self.forward_calls = 0
        self.gradient_calls = 0

    def forward(self, x):
        with self._lock:
            self.forward_calls += 1
        return super().forward(x)

    def loss_and_input_gradient(self, x, label=None, kind=None):
        with self._lock:
            self.gradient_calls += 1
        if kind is None:
            return super().loss_and_input_gradient(x, label)
        return super().loss_and_input_gradient(x, label, kind)


def linear_model(weight, bias=None, input_shape=None) -> Model:
    """Flatten -> dense model with the given weights (num_classes x features)."""
    weight = np.asarray(weight, dtype=np.float32)
    classes, features = weight.shape
    bias = np.zeros(classes, dtype=np.float32) if bias is None else np.asarray(bias, dtype=np.float32)
    input_shape = input_shape or (1, 1, features)
    return Model([Flatten(), Dense(features, classes, weight, bias)], input_shape, classes)


@pytest.fixture(scope='session')
def blobs():
    return synth_blobs(num_classes=2, per_class=200, dim=4, separation=10.0, seed=0)


@pytest.fixture(scope='session')
def blob_split(blobs):
    return train_test_split(blobs, 0.25, seed=0)


@pytest.fixture(scope='session')
def trained_mlp(blob_split):
    train_set, _ = blob_split
    model = build_model('mlp', train_set.sample_shape, 2, seed=0, hidden=[16])
    return train(model, train_set, epochs=30, learning_rate=0.5, batch_size=32, seed=0)


@pytest.fixture
def tiny_cnn():
    return build_model('desk-cnn', (1, 6, 6), 3, seed=1)


@pytest.fixture
def two_class_linear():
    """logits == x on a 2-pixel input: class 0 wins when x[0] >= x[1]."""
    return linear_model(np.eye(2))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
