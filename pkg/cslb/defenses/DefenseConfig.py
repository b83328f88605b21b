"""
DefenseConfig.py

Configuration record of one preprocessor defense.
"""
# Standard Imports
from __future__ import annotations
from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional

# Project-Specific Imports
from cslb.errors import ConfigError
from cslb.strict import from_dict_strict

DEFENSE_KINDS = ('none', 'snd', 'rnd', 'bit-squeeze', 'avg-smooth', 'counter-sample')


@dataclass(frozen=True)
class DefenseConfig:
    """
    Args:
        kind (str): one of DEFENSE_KINDS
        k (int): counter-sample iteration count
        alpha (float): counter-sample step size
        sigma (float): Gaussian noise std (snd, counter-sample), [0, 1] pixel units
        mu (float): Gaussian noise mean (counter-sample)
        eta (float): uniform noise half-width (rnd)
        bits (int): bit depth (bit-squeeze)
        kernel (int): odd averaging window (avg-smooth)
        freeze_label (bool): fix the counter-sample target label at the first iterate
        seed (int): noise seed, combined with each query's nonce
        label (str): optional display name; derived from the parameters when empty
    """

    kind: str = 'none'
    k: int = 10
    alpha: float = 0.1
    sigma: float = 0.01
    mu: float = 0.0
    eta: float = 0.02
    bits: int = 4
    kernel: int = 3
    freeze_label: bool = False
    seed: int = 0
    label: Optional[str] = None

    def __post_init__(self):
        for name in ('alpha', 'sigma', 'mu', 'eta'):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ('k', 'bits', 'kernel', 'seed'):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.kind not in DEFENSE_KINDS:
            raise ConfigError(f"Unknown defense kind {self.kind!r}; valid kinds: {list(DEFENSE_KINDS)}")
        problems = []
        if self.k < 0:
            problems.append(f"k={self.k} < 0")
        if self.alpha < 0:
            problems.append(f"alpha={self.alpha} < 0")
        if self.sigma < 0:
            problems.append(f"sigma={self.sigma} < 0")
        if self.eta < 0:
            problems.append(f"eta={self.eta} < 0")
        if not 1 <= self.bits <= 8:
            problems.append(f"bits={self.bits} outside [1, 8]")
        if self.kernel < 1 or self.kernel % 2 == 0:
            problems.append(f"kernel={self.kernel} must be odd and >= 1")
        if self.seed < 0:
            problems.append(f"seed={self.seed} < 0")
        if problems:
            raise ConfigError(f"Invalid {self.kind} defense: {', '.join(problems)}")

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == 'snd':
            return f'snd(sigma={self.sigma:g})'
        if self.kind == 'rnd':
            return f'rnd(eta={self.eta:g})'
        if self.kind == 'bit-squeeze':
            return f'bit-squeeze(bits={self.bits})'
        if self.kind == 'avg-smooth':
            return f'avg-smooth(kernel={self.kernel})'
        if self.kind == 'counter-sample':
            frozen = ',frozen' if self.freeze_label else ''
            return f'counter-sample(k={self.k},alpha={self.alpha:g},sigma={self.sigma:g}{frozen})'
        return 'none'

    @property
    def is_noisy(self) -> bool:
        return ((self.kind in ('snd', 'counter-sample') and self.sigma > 0)
                or (self.kind == 'rnd' and self.eta > 0))

    def canonical(self) -> DefenseConfig:
        """
        Simplest config with identical query behaviour: parameters the kind
        ignores are reset, and a counter-sample with no descent (alpha == 0 or
        k == 0) and zero-mean noise becomes the snd defense it reduces to.
        """
        if self.kind == 'counter-sample' and (self.alpha == 0 or self.k == 0) and self.mu == 0:
            return DefenseConfig(kind='snd', sigma=self.sigma, seed=self.seed)
        if self.kind == 'snd':
            return DefenseConfig(kind='snd', sigma=self.sigma, seed=self.seed)
        if self.kind == 'rnd':
            return DefenseConfig(kind='rnd', eta=self.eta, seed=self.seed)
        if self.kind == 'bit-squeeze':
            return DefenseConfig(kind='bit-squeeze', bits=self.bits)
        if self.kind == 'avg-smooth':
            return DefenseConfig(kind='avg-smooth', kernel=self.kernel)
        if self.kind == 'counter-sample':
            return DefenseConfig(kind='counter-sample', k=self.k, alpha=self.alpha, sigma=self.sigma, mu=self.mu,
                                 freeze_label=self.freeze_label, seed=self.seed)
        return DefenseConfig(kind='none')

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], path: str = 'defense') -> DefenseConfig:
        return from_dict_strict(cls, data, path)
