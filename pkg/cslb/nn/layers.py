"""
layers.py

The fixed layer set of the network engine: dense, conv2d, relu and flatten.
Every layer works on batches with a leading batch axis and returns a cache
from `forward` that `backward` consumes.

Dependencies: numpy
"""
# Standard Imports
from __future__ import annotations
from abc import ABC, abstractmethod
from typing import List, Tuple, Dict, Any

# Third-Party Imports
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# Project-Specific Imports
from cslb.errors import InvalidInputError


Shape = Tuple[int, ...]


class Layer(ABC):
    """
    Abstraction for a single layer. Shapes exclude the batch axis.
    """

    kind: str = ''

    @property
    def params(self) -> List[np.ndarray]:
        """Learnable parameters in serialization order (weight, then bias)."""
        return []

    @abstractmethod
    def output_shape(self, input_shape: Shape) -> Shape:
        pass

    @abstractmethod
    def forward(self, x: np.ndarray) -> Tuple[np.ndarray, Any]:
        pass

    @abstractmethod
    def backward(self, cache: Any, grad_out: np.ndarray) -> Tuple[np.ndarray, List[np.ndarray]]:
        """
        Inputs
        ------
        cache
            Whatever `forward` returned next to its output.
        grad_out: np.ndarray
            dL/d(output), batch first.

        Returns
        -------
        tuple
            dL/d(input) and the per-parameter gradients summed over the batch.
        """
        pass

    def describe(self) -> Dict[str, Any]:
        return {'type': self.kind}

    def with_params(self, params: List[np.ndarray]) -> Layer:
        return self


class Dense(Layer):

    kind = 'dense'

    def __init__(self, in_features: int, out_features: int, weight: np.ndarray = None, bias: np.ndarray = None):
        self.in_features = int(in_features)
        self.out_features = int(out_features)
        self.weight = np.zeros((out_features, in_features), dtype=np.float32) if weight is None else weight
        self.bias = np.zeros(out_features, dtype=np.float32) if bias is None else bias

    @property
    def params(self):
        return [self.weight, self.bias]

    def output_shape(self, input_shape):
        if tuple(input_shape) != (self.in_features,):
            raise InvalidInputError(f"dense expects input shape ({self.in_features},), got {tuple(input_shape)}")
        return (self.out_features,)

    def forward(self, x):
        return x @ self.weight.T + self.bias, x

    def backward(self, cache, grad_out):
        x = cache
        grad_w = grad_out.T @ x
        grad_b = grad_out.sum(axis=0)
        return grad_out @ self.weight, [grad_w, grad_b]

    def describe(self):
        return {'type': self.kind, 'in_features': self.in_features, 'out_features': self.out_features}

    def with_params(self, params):
        weight, bias = params
        return Dense(self.in_features, self.out_features, weight, bias)


class Conv2D(Layer):
    """
    Valid (unpadded) 2-D convolution over [B, C, H, W] inputs with a square
    kernel and a single stride for both spatial axes.
    """

    kind = 'conv2d'

    def __init__(self, in_channels: int, out_channels: int, kernel: int, stride: int = 1,
                 weight: np.ndarray = None, bias: np.ndarray = None):
        self.in_channels = int(in_channels)
        self.out_channels = int(out_channels)
        self.kernel = int(kernel)
        self.stride = int(stride)
        shape = (out_channels, in_channels, kernel, kernel)
        self.weight = np.zeros(shape, dtype=np.float32) if weight is None else weight
        self.bias = np.zeros(out_channels, dtype=np.float32) if bias is None else bias

    @property
    def params(self):
        return [self.weight, self.bias]

    def output_shape(self, input_shape):
        if len(input_shape) != 3 or input_shape[0] != self.in_channels:
            raise InvalidInputError(f"conv2d expects ({self.in_channels}, H, W), got {tuple(input_shape)}")
        _, h, w = input_shape
        if h < self.kernel or w < self.kernel:
            raise InvalidInputError(f"conv2d kernel {self.kernel} larger than input {h}x{w}")
        return (self.out_channels, (h - self.kernel) // self.stride + 1, (w - self.kernel) // self.stride + 1)

    def _windows(self, x):
        # [B, C, Ho, Wo, k, k] view, strided along both spatial axes
        windows = sliding_window_view(x, (self.kernel, self.kernel), axis=(2, 3))
        return windows[:, :, ::self.stride, ::self.stride]

    def forward(self, x):
        windows = self._windows(x)
        out = np.einsum('bchwij,ocij->bohw', windows, self.weight, optimize=True)
        out += self.bias[None, :, None, None]
        return out, x

    def backward(self, cache, grad_out):
        x = cache
        windows = self._windows(x)
        grad_w = np.einsum('bohw,bchwij->ocij', grad_out, windows, optimize=True)
        grad_b = grad_out.sum(axis=(0, 2, 3))

        # Scatter the output gradient back through every kernel offset
        grad_x = np.zeros_like(x)
        ho, wo = grad_out.shape[2:]
        s = self.stride
        for i in range(self.kernel):
            for j in range(self.kernel):
                contribution = np.einsum('bohw,oc->bchw', grad_out, self.weight[:, :, i, j], optimize=True)
                grad_x[:, :, i:i + s * (ho - 1) + 1:s, j:j + s * (wo - 1) + 1:s] += contribution
        return grad_x, [grad_w, grad_b]

    def describe(self):
        return {'type': self.kind, 'in_channels': self.in_channels, 'out_channels': self.out_channels,
                'kernel': self.kernel, 'stride': self.stride}

    def with_params(self, params):
        weight, bias = params
        return Conv2D(self.in_channels, self.out_channels, self.kernel, self.stride, weight, bias)


class ReLU(Layer):

    kind = 'relu'

    def output_shape(self, input_shape):
        return tuple(input_shape)

    def forward(self, x):
        mask = x > 0
        return np.where(mask, x, 0).astype(x.dtype, copy=False), mask

    def backward(self, cache, grad_out):
        return grad_out * cache, []


class Flatten(Layer):

    kind = 'flatten'

    def output_shape(self, input_shape):
        return (int(np.prod(input_shape)),)

    def forward(self, x):
        return x.reshape(x.shape[0], -1), x.shape

    def backward(self, cache, grad_out):
        return grad_out.reshape(cache), []


LAYER_TYPES = {
    Dense.kind: Dense,
    Conv2D.kind: Conv2D,
    ReLU.kind: ReLU,
    Flatten.kind: Flatten,
}


def layer_from_description(description: Dict[str, Any]) -> Layer:
    """Build a parameterless layer skeleton from its JSON description."""
    fields = dict(description)
    kind = fields.pop('type', None)
    if kind not in LAYER_TYPES:
        raise InvalidInputError(f"Unknown layer type {kind!r}; valid types: {sorted(LAYER_TYPES)}")
    return LAYER_TYPES[kind](**fields)
