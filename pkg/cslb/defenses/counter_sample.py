"""
counter_sample.py

The counter-sample transform: Gaussian noise followed by k gradient-descent
steps on the loss toward the model's predicted label.

    x*_1     = x + z,  z ~ N(mu, sigma^2 I)
    x*_{i+1} = x*_i - alpha * dL(f(x*_i), y_i)/dx*_i

y_i is recomputed on every iterate unless the config freezes it. The output is
not clipped to [0, 1].
"""
# Standard Imports
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.defenses.baselines import gaussian_noise, query_rng
from cslb.errors import InvalidInputError
from cslb.nn.Model import Model


@dataclass
class CounterSampleTrace:
    """Per-iteration record; every list has length k."""
    labels: List[int] = field(default_factory=list)
    losses: List[float] = field(default_factory=list)
    step_norms: List[float] = field(default_factory=list)

    def __len__(self):
        return len(self.labels)

    def append(self, label: int, loss: float, step_norm: float):
        self.labels.append(int(label))
        self.losses.append(float(loss))
        self.step_norms.append(float(step_norm))

    def as_dict(self) -> Dict[str, Any]:
        return {'labels': list(self.labels), 'losses': list(self.losses), 'step_norms': list(self.step_norms)}


def counter_sample(model: Model, x: np.ndarray, cfg: DefenseConfig,
                   nonce: Sequence[int] = ()) -> Tuple[np.ndarray, CounterSampleTrace]:
    """
    Inputs
    ------
    model: Model
    x: np.ndarray
        Single query of shape model.input_shape.
    cfg: DefenseConfig
        kind must be 'counter-sample'.
    nonce: sequence of int
        Per-query nonce; together with cfg.seed it fixes the noise draw.

    Returns
    -------
    tuple
        (x_star, trace)
    """
    if cfg.kind != 'counter-sample':
        raise InvalidInputError(f"counter_sample called with a {cfg.kind!r} defense")
    x = np.asarray(x, dtype=np.float32)
    if x.shape != model.input_shape:
        raise InvalidInputError(f"Input shape {x.shape} does not match model input shape {model.input_shape}")

    x_star = gaussian_noise(x, cfg.mu, cfg.sigma, query_rng(cfg, nonce))
    alpha = np.float32(cfg.alpha)
    trace = CounterSampleTrace()
    frozen = None

    for _ in range(cfg.k):
        label, value, _, grad = model.loss_and_input_gradient(x_star, label=frozen)
        if cfg.freeze_label:
            frozen = label
        x_next = (x_star - alpha * grad.astype(np.float32, copy=False)).astype(np.float32, copy=False)
        trace.append(label, value, np.linalg.norm((x_next - x_star).ravel()))
        x_star = x_next

    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"counter-sample trace {trace.as_dict()}")
    return x_star, trace
