"""
baselines.py

Baseline preprocessors compared against counter-samples: Gaussian noise (SND),
uniform noise (RND), bit squeezing (BS) and average smoothing (AS). Noise
outputs are not clipped back into [0, 1].
"""
# Standard Imports
from typing import Sequence

# Third-Party Imports
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# Project-Specific Imports
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.errors import InvalidInputError


def query_rng(cfg: DefenseConfig, nonce: Sequence[int] = ()) -> np.random.Generator:
    """Generator for one query: seeded from the defense seed and the query nonce."""
    return np.random.default_rng([int(cfg.seed), *(int(n) for n in nonce)])


def gaussian_noise(x: np.ndarray, mean: float, sigma: float, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(mean, sigma, size=x.shape)
    return x + z.astype(x.dtype)


def snd(x: np.ndarray, cfg: DefenseConfig, nonce: Sequence[int] = ()) -> np.ndarray:
    """x + N(0, sigma^2 I)."""
    return gaussian_noise(x, 0.0, cfg.sigma, query_rng(cfg, nonce))


def rnd(x: np.ndarray, cfg: DefenseConfig, nonce: Sequence[int] = ()) -> np.ndarray:
    """x + U(-eta, eta) per coordinate."""
    z = query_rng(cfg, nonce).uniform(-cfg.eta, cfg.eta, size=x.shape)
    return x + z.astype(x.dtype)


def bit_squeeze(x: np.ndarray, cfg: DefenseConfig) -> np.ndarray:
    """round(x * (2^bits - 1)) / (2^bits - 1); inputs must be pixels in [0, 1]."""
    if x.size and (x.min() < 0.0 or x.max() > 1.0):
        raise InvalidInputError("bit_squeeze expects pixels in [0, 1]")
    levels = 2 ** cfg.bits - 1
    return np.round(x * levels) / levels


def avg_smooth(x: np.ndarray, cfg: DefenseConfig) -> np.ndarray:
    """
    kernel x kernel mean filter over the last two (spatial) axes with
    replicate padding at the borders.
    """
    if cfg.kernel == 1:
        return x.copy()
    radius = cfg.kernel // 2
    pad = [(0, 0)] * (x.ndim - 2) + [(radius, radius), (radius, radius)]
    padded = np.pad(x, pad, mode='edge')
    windows = sliding_window_view(padded, (cfg.kernel, cfg.kernel), axis=(-2, -1))
    return windows.mean(axis=(-2, -1)).astype(x.dtype, copy=False)
