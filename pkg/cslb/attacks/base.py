"""
base.py

Attack configuration and result records, the attacker's loss, and the
projection helpers shared by every attack.
"""
# Standard Imports
from __future__ import annotations
from dataclasses import dataclass, asdict, field
from typing import Any, Dict, List, Optional

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.errors import ConfigError
from cslb.strict import from_dict_strict

ATTACK_KINDS = ('nes', 'zo-signsgd', 'signhunter', 'square', 'simba', 'hsj-lite')
SCORE_ATTACKS = ('nes', 'zo-signsgd', 'signhunter', 'square', 'simba')
DECISION_ATTACKS = ('hsj-lite',)

HSJ_INIT_QUERIES = 1000


@dataclass(frozen=True)
class AttackConfig:
    """
    Args:
        kind (str): one of ATTACK_KINDS
        epsilon (float): l-infinity radius
        norm (str): only 'linf'
        step_factor (float): multiplier of the attack's step parameter (adaptive Strategy 2)
        seed (int): attack randomness, combined with the per-sample nonce
        population (int): NES / ZO-SignSGD directions per gradient estimate
        smoothing (float): NES / ZO-SignSGD probe radius
        step (float): NES / ZO-SignSGD step size; defaults to epsilon / 10
        p_init (float): Square initial fraction of pixels per window
        simba_step (float): SimBA per-coordinate step; defaults to epsilon / 5
        hsj_tolerance (float): boundary binary-search tolerance
        hsj_batch (int): HopSkipJump gradient-estimate batch
        label (str): optional display name
    """

    kind: str = 'nes'
    epsilon: float = 0.2
    norm: str = 'linf'
    step_factor: float = 1.0
    seed: int = 0
    population: int = 20
    smoothing: float = 0.01
    step: Optional[float] = None
    p_init: float = 0.1
    simba_step: Optional[float] = None
    hsj_tolerance: float = 1e-3
    hsj_batch: int = 40
    label: Optional[str] = None

    def __post_init__(self):
        for name in ('epsilon', 'step_factor', 'smoothing', 'p_init', 'hsj_tolerance'):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ('seed', 'population', 'hsj_batch'):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.kind not in ATTACK_KINDS:
            raise ConfigError(f"Unknown attack kind {self.kind!r}; valid kinds: {list(ATTACK_KINDS)}")
        if self.norm != 'linf':
            raise ConfigError(f"Unsupported norm {self.norm!r}; valid norms: ['linf']")
        problems = []
        if self.epsilon < 0:
            problems.append(f"epsilon={self.epsilon} < 0")
        if self.step_factor <= 0:
            problems.append(f"step_factor={self.step_factor} <= 0")
        if self.population < 2:
            problems.append(f"population={self.population} < 2")
        if self.smoothing <= 0:
            problems.append(f"smoothing={self.smoothing} <= 0")
        if self.step is not None and self.step <= 0:
            problems.append(f"step={self.step} <= 0")
        if not 0 < self.p_init <= 1:
            problems.append(f"p_init={self.p_init} outside (0, 1]")
        if self.simba_step is not None and self.simba_step <= 0:
            problems.append(f"simba_step={self.simba_step} <= 0")
        if self.hsj_tolerance <= 0:
            problems.append(f"hsj_tolerance={self.hsj_tolerance} <= 0")
        if self.hsj_batch < 1:
            problems.append(f"hsj_batch={self.hsj_batch} < 1")
        if self.seed < 0:
            problems.append(f"seed={self.seed} < 0")
        if problems:
            raise ConfigError(f"Invalid {self.kind} attack: {', '.join(problems)}")

    @property
    def name(self) -> str:
        return self.label or self.kind

    @property
    def is_decision(self) -> bool:
        return self.kind in DECISION_ATTACKS

    @property
    def step_size(self) -> float:
        return self.step if self.step is not None else self.epsilon / 10

    @property
    def simba_step_size(self) -> float:
        return self.simba_step if self.simba_step is not None else self.epsilon / 5

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], path: str = 'attack') -> AttackConfig:
        return from_dict_strict(cls, data, path)


@dataclass
class AttackResult:
    """
    Args:
        kind (str): attack kind
        delta (np.ndarray): final perturbation, inside the epsilon ball
        success (bool): verified defended label differs from the clean label
        queries_used (int): physical oracle queries
        loss_history (list): one attacker-loss value per query (score attacks) or
            the boundary distance per iteration (hsj-lite)
        distance (float): l-infinity distance of the attack's final point before projection
        init_failure (bool): hsj-lite found no adversarial starting point
        attacker_success (bool): the attacker's own belief when it stopped
    """
    kind: str
    delta: np.ndarray
    success: bool
    queries_used: int
    loss_history: List[float] = field(default_factory=list)
    distance: float = 0.0
    init_failure: bool = False
    attacker_success: bool = False

    @property
    def linf(self) -> float:
        return float(np.max(np.abs(self.delta))) if self.delta.size else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'success': bool(self.success),
            'queries_used': int(self.queries_used),
            'linf': self.linf,
            'distance': float(self.distance) if np.isfinite(self.distance) else None,
            'init_failure': bool(self.init_failure),
            'attacker_success': bool(self.attacker_success),
        }


def attacker_loss(probs: np.ndarray, y_clean: int) -> float:
    """Cross-entropy of the returned probabilities at the clean label; attacks maximize it."""
    p = max(float(probs[y_clean]), np.finfo(np.float64).tiny)
    return -float(np.log(p))


def project(x: np.ndarray, x0: np.ndarray, epsilon: float) -> np.ndarray:
    """Projection onto the l-inf ball around x0 intersected with [0, 1]."""
    eps = np.float32(epsilon)
    return np.clip(np.clip(x, x0 - eps, x0 + eps), 0.0, 1.0).astype(np.float32, copy=False)


def is_misclassified(probs: np.ndarray, y_clean: int) -> bool:
    return int(np.argmax(probs)) != int(y_clean)


def finish(kind: str, oracle, x0: np.ndarray, x: np.ndarray, y_clean: int, loss_history: List[float],
           attacker_success: bool, distance: float = None, init_failure: bool = False,
           within_radius: bool = True) -> AttackResult:
    """
    Build the result for final point `x` (already inside the ball) and verify
    success with a fresh defended query.
    """
    delta = (x - x0).astype(np.float32)
    success = within_radius and not init_failure and oracle.verify(x) != int(y_clean)
    if distance is None:
        distance = float(np.max(np.abs(delta))) if delta.size else 0.0
    return AttackResult(kind=kind, delta=delta, success=bool(success), queries_used=oracle.used,
                        loss_history=list(loss_history), distance=float(distance),
                        init_failure=init_failure, attacker_success=bool(attacker_success))
