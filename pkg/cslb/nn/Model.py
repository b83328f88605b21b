"""
Model.py

Feedforward classifier built from the fixed layer set. A Model is treated as
immutable: training and dtype conversion return new instances, so forward and
gradient calls are safe to share between threads.

Dependencies: layers.py, losses.py
"""
# Standard Imports
from __future__ import annotations
from typing import List, Sequence, Tuple, Dict, Any

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.errors import InvalidInputError
from cslb.nn.layers import Layer, Dense, Conv2D, ReLU, Flatten, layer_from_description
from cslb.nn.losses import LossKind, batch_loss_and_grad


class Model:
    """
    Inputs
    ------
    layers: Sequence[Layer]
        Ordered layers; the output shape of each must be the input of the next.
    input_shape: tuple
        Shape of one input without the batch axis, e.g. (1, 28, 28).
    num_classes: int
        Length of the logit vector.
    """

    def __init__(self, layers: Sequence[Layer], input_shape: Sequence[int], num_classes: int):
        self._layers: Tuple[Layer, ...] = tuple(layers)
        self._input_shape = tuple(int(s) for s in input_shape)
        self._num_classes = int(num_classes)

        # Validate that the layer shapes compose into a logit vector
        shape = self._input_shape
        for layer in self._layers:
            shape = layer.output_shape(shape)
        if shape != (self._num_classes,):
            raise InvalidInputError(f"Model output shape {shape} does not match num_classes={self._num_classes}")

    # ----- Properties -----
    @property
    def layers(self) -> Tuple[Layer, ...]:
        return self._layers

    @property
    def input_shape(self) -> Tuple[int, ...]:
        return self._input_shape

    @property
    def num_classes(self) -> int:
        return self._num_classes

    @property
    def params(self) -> List[np.ndarray]:
        return [p for layer in self._layers for p in layer.params]

    @property
    def num_params(self) -> int:
        return int(sum(p.size for p in self.params))

    @property
    def dtype(self) -> np.dtype:
        params = self.params
        return params[0].dtype if params else np.dtype(np.float32)

    # ----- Construction helpers -----
    def describe(self) -> Dict[str, Any]:
        """Architecture header as stored in weight files."""
        return {
            'input_shape': list(self._input_shape),
            'num_classes': self._num_classes,
            'layers': [layer.describe() for layer in self._layers],
            'param_count': self.num_params,
        }

    def with_params(self, params: Sequence[np.ndarray]) -> Model:
        """Return a copy of this architecture carrying `params` (flat, layer order)."""
        params = list(params)
        expected = [p.shape for p in self.params]
        if [p.shape for p in params] != expected:
            raise InvalidInputError(f"Parameter shapes {[p.shape for p in params]} do not match {expected}")

        layers, cursor = [], 0
        for layer in self._layers:
            count = len(layer.params)
            layers.append(layer.with_params(params[cursor:cursor + count]))
            cursor += count
        return Model(layers, self._input_shape, self._num_classes)

    def astype(self, dtype) -> Model:
        return self.with_params([p.astype(dtype) for p in self.params])

    # ----- Inference -----
    def _as_batch(self, x: np.ndarray) -> Tuple[np.ndarray, bool]:
        x = np.asarray(x)
        if x.shape == self._input_shape:
            batch, single = x[None], True
        elif x.shape[1:] == self._input_shape:
            batch, single = x, False
        else:
            raise InvalidInputError(f"Input shape {x.shape} does not match model input shape {self._input_shape}")
        if not np.all(np.isfinite(batch)):
            raise InvalidInputError("Input contains non-finite values")
        return batch.astype(self.dtype, copy=False), single

    def _forward_batch(self, batch: np.ndarray):
        caches = []
        out = batch
        for layer in self._layers:
            out, cache = layer.forward(out)
            caches.append(cache)
        return out, caches

    def _backward(self, caches, grad_logits):
        grad = grad_logits
        layer_grads = [None] * len(self._layers)
        for index in range(len(self._layers) - 1, -1, -1):
            grad, layer_grads[index] = self._layers[index].backward(caches[index], grad)
        return grad, [g for grads in layer_grads for g in grads]

    def forward(self, x: np.ndarray) -> np.ndarray:
        """
        Logits for one input (shape == input_shape) or a batch of inputs.
        """
        batch, single = self._as_batch(x)
        logits, _ = self._forward_batch(batch)
        return logits[0] if single else logits

    def predict(self, x: np.ndarray) -> np.ndarray:
        """Argmax labels; np.argmax already resolves ties to the lowest index."""
        logits = self.forward(x)
        return np.argmax(logits, axis=-1)

    def activation_pattern(self, x: np.ndarray) -> List[np.ndarray]:
        """On/off masks of every ReLU for input `x`."""
        batch, _ = self._as_batch(x)
        _, caches = self._forward_batch(batch)
        return [cache for layer, cache in zip(self._layers, caches) if isinstance(layer, ReLU)]

    # ----- Gradients -----
    def input_gradient(self, x: np.ndarray, label, kind: LossKind = LossKind.CROSS_ENTROPY) -> np.ndarray:
        """
        dL/dx of the cross-entropy at `label`, same shape as `x`. For a batch,
        `label` is an array and row i holds the gradient of sample i's own loss.
        """
        batch, single = self._as_batch(x)
        labels = np.atleast_1d(np.asarray(label, dtype=np.int64))
        if labels.shape[0] != batch.shape[0]:
            raise InvalidInputError(f"{labels.shape[0]} labels for a batch of {batch.shape[0]}")

        logits, caches = self._forward_batch(batch)
        _, grad_logits = batch_loss_and_grad(logits, labels, kind)
        # batch_loss_and_grad averages; undo it so each row is its own loss gradient
        grad_x, _ = self._backward(caches, grad_logits * batch.shape[0])
        return grad_x[0] if single else grad_x

    def loss_and_input_gradient(self, x: np.ndarray, label: int = None, kind: LossKind = LossKind.CROSS_ENTROPY):
        """
        One forward/backward pass on a single input.

        Inputs
        ------
        x: np.ndarray
            Single input of shape input_shape.
        label: int | None
            Loss target. None targets the model's own argmax prediction on `x`.

        Returns
        -------
        tuple
            (label used, loss value, logits, dL/dx)
        """
        batch, single = self._as_batch(x)
        if not single:
            raise InvalidInputError("loss_and_input_gradient takes a single input")
        logits, caches = self._forward_batch(batch)
        if label is None:
            label = int(np.argmax(logits[0]))
        value, grad_logits = batch_loss_and_grad(logits, np.asarray([label]), kind)
        grad_x, _ = self._backward(caches, grad_logits)
        return int(label), value, logits[0], grad_x[0]

    def param_gradients(self, xs: np.ndarray, labels: np.ndarray, kind: LossKind = LossKind.CROSS_ENTROPY):
        """
        Mean-over-batch loss gradients for every parameter.

        Returns
        -------
        tuple
            (mean loss, list of gradients aligned with `self.params`)
        """
        xs = np.asarray(xs)
        if xs.ndim == 0 or xs.shape[0] == 0:
            raise InvalidInputError("param_gradients needs a nonempty batch")
        batch, _ = self._as_batch(xs)
        if batch.shape[0] != len(labels):
            raise InvalidInputError(f"{len(labels)} labels for a batch of {batch.shape[0]}")

        logits, caches = self._forward_batch(batch)
        value, grad_logits = batch_loss_and_grad(logits, labels, kind)
        _, grads = self._backward(caches, grad_logits)
        return value, grads


def build_model(arch: str, input_shape: Sequence[int], num_classes: int, seed: int = 0,
                hidden: Sequence[int] = (32,)) -> Model:
    """
    Build and He-initialize one of the supported architectures.

    Inputs
    ------
    arch: str
        'desk-cnn' (conv 8x3x3 -> relu -> conv 16x3x3 stride 2 -> relu -> flatten
        -> dense), 'mlp' (flatten -> [dense -> relu]* -> dense) or 'linear'
        (flatten -> dense).
    input_shape: tuple
        (C, H, W) of one input.
    num_classes: int
    seed: int
        Seed of the initialization generator.
    hidden: sequence of int
        Hidden widths of the 'mlp' architecture.
    """
    input_shape = tuple(int(s) for s in input_shape)
    rng = np.random.default_rng(seed)

    if arch == 'desk-cnn':
        channels = input_shape[0]
        skeleton = [Conv2D(channels, 8, 3, 1), ReLU(), Conv2D(8, 16, 3, 2), ReLU(), Flatten()]
    elif arch == 'mlp':
        skeleton, width = [Flatten()], int(np.prod(input_shape))
        for size in hidden:
            skeleton += [Dense(width, size), ReLU()]
            width = size
    elif arch == 'linear':
        skeleton = [Flatten()]
    else:
        raise InvalidInputError(f"Unknown architecture {arch!r}; valid: ['desk-cnn', 'linear', 'mlp']")

    # The classifier head
    shape = input_shape
    for layer in skeleton:
        shape = layer.output_shape(shape)
    skeleton.append(Dense(shape[0], num_classes))

    layers = []
    for layer in skeleton:
        if isinstance(layer, Dense):
            std = np.sqrt(2.0 / layer.in_features)
            weight = (rng.standard_normal(layer.weight.shape) * std).astype(np.float32)
            layer = layer.with_params([weight, np.zeros_like(layer.bias)])
        elif isinstance(layer, Conv2D):
            std = np.sqrt(2.0 / (layer.in_channels * layer.kernel * layer.kernel))
            weight = (rng.standard_normal(layer.weight.shape) * std).astype(np.float32)
            layer = layer.with_params([weight, np.zeros_like(layer.bias)])
        layers.append(layer)

    return Model(layers, input_shape, num_classes)


def model_from_description(header: Dict[str, Any]) -> Model:
    """Zero-initialized model skeleton from a weights-file architecture header."""
    layers = [layer_from_description(d) for d in header['layers']]
    return Model(layers, header['input_shape'], header['num_classes'])
