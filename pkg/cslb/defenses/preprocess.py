"""
preprocess.py

Dispatch from a DefenseConfig to its transform, and the defended model
f'(x) = f(T(x + z)) that every oracle query goes through.
"""
# Standard Imports
from typing import Sequence, Tuple

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.defenses.baselines import snd, rnd, bit_squeeze, avg_smooth
from cslb.defenses.counter_sample import counter_sample
from cslb.nn.Model import Model
from cslb.nn.losses import softmax


def preprocess(model: Model, x: np.ndarray, cfg: DefenseConfig, nonce: Sequence[int] = ()) -> np.ndarray:
    """The tensor the model actually evaluates for query `x`."""
    x = np.asarray(x, dtype=np.float32)
    if cfg.kind == 'none':
        return x
    if cfg.kind == 'snd':
        return snd(x, cfg, nonce)
    if cfg.kind == 'rnd':
        return rnd(x, cfg, nonce)
    if cfg.kind == 'bit-squeeze':
        return bit_squeeze(x, cfg).astype(np.float32)
    if cfg.kind == 'avg-smooth':
        return avg_smooth(x, cfg)
    x_star, _ = counter_sample(model, x, cfg, nonce)
    return x_star


def defended_forward(model: Model, x: np.ndarray, cfg: DefenseConfig,
                     nonce: Sequence[int] = ()) -> Tuple[np.ndarray, int]:
    """
    Inputs
    ------
    model: Model
    x: np.ndarray
        Single query.
    cfg: DefenseConfig
    nonce: sequence of int
        Fresh per query; the output depends only on (model, x, cfg, nonce).

    Returns
    -------
    tuple
        (float64 probability vector, argmax label)
    """
    logits = model.forward(preprocess(model, x, cfg, nonce))
    probs = softmax(logits.astype(np.float64))
    return probs, int(np.argmax(logits))
