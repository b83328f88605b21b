"""
nes.py

Score-based attacks driven by zeroth-order gradient estimates:

- NES: antithetic Gaussian sampling, projected sign ascent with a fixed step.
- ZO-SignSGD: forward differences along random unit directions, sign ascent
  with a step decaying as 1/sqrt(t + 1).

Probe points are projected onto the feasible set before they are queried.
"""
# Standard Imports
from typing import Callable, Sequence

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.attacks.base import AttackConfig, AttackResult, attacker_loss, project, is_misclassified, finish
from cslb.errors import BudgetExhausted

LossFn = Callable[[np.ndarray], float]


def estimate_gradient_nes(loss_fn: LossFn, x: np.ndarray, population: int, sigma: float,
                          rng: np.random.Generator) -> np.ndarray:
    """
    sum_i [l(x + sigma u_i) - l(x - sigma u_i)] u_i / (n sigma) over n/2
    antithetic Gaussian pairs.
    """
    pairs = max(population // 2, 1)
    grad = np.zeros(x.shape, dtype=np.float64)
    for _ in range(pairs):
        u = rng.standard_normal(x.shape).astype(np.float32)
        grad += (loss_fn(x + np.float32(sigma) * u) - loss_fn(x - np.float32(sigma) * u)) * u
    return grad / (2 * pairs * sigma)


def estimate_gradient_zo(loss_fn: LossFn, x: np.ndarray, population: int, sigma: float,
                         rng: np.random.Generator, base_loss: float = None) -> np.ndarray:
    """
    (d / (q sigma)) sum_i [l(x + sigma u_i) - l(x)] u_i with u_i uniform on the
    unit sphere.
    """
    if base_loss is None:
        base_loss = loss_fn(x)
    d = x.size
    grad = np.zeros(x.shape, dtype=np.float64)
    for _ in range(population):
        u = rng.standard_normal(x.shape)
        u = (u / np.linalg.norm(u.ravel())).astype(np.float32)
        grad += (loss_fn(x + np.float32(sigma) * u) - base_loss) * u
    return grad * d / (population * sigma)


def _probe_loss(oracle, x0: np.ndarray, y_clean: int, epsilon: float, history: list) -> LossFn:
    def loss_fn(point: np.ndarray) -> float:
        value = attacker_loss(oracle.query(project(point, x0, epsilon)), y_clean)
        history.append(value)
        return value
    return loss_fn


def attack_nes(oracle, x: np.ndarray, y_clean: int, cfg: AttackConfig, nonce: Sequence[int] = ()) -> AttackResult:
    x0 = np.asarray(x, dtype=np.float32)
    rng = np.random.default_rng([cfg.seed, *nonce])
    step = np.float32(cfg.step_size * cfg.step_factor)
    history = []
    loss_fn = _probe_loss(oracle, x0, y_clean, cfg.epsilon, history)
    current, fooled = x0.copy(), False

    try:
        while True:
            grad = estimate_gradient_nes(loss_fn, current, cfg.population, cfg.smoothing, rng)
            current = project(current + step * np.sign(grad).astype(np.float32), x0, cfg.epsilon)
            probs = oracle.query(current)
            history.append(attacker_loss(probs, y_clean))
            if is_misclassified(probs, y_clean):
                fooled = True
                break
    except BudgetExhausted:
        pass

    return finish('nes', oracle, x0, current, y_clean, history, fooled)


def attack_zo_signsgd(oracle, x: np.ndarray, y_clean: int, cfg: AttackConfig,
                      nonce: Sequence[int] = ()) -> AttackResult:
    x0 = np.asarray(x, dtype=np.float32)
    rng = np.random.default_rng([cfg.seed, *nonce])
    history = []
    loss_fn = _probe_loss(oracle, x0, y_clean, cfg.epsilon, history)
    current, fooled, t = x0.copy(), False, 0

    try:
        while True:
            # The base query of each iteration doubles as the success check
            probs = oracle.query(current)
            base = attacker_loss(probs, y_clean)
            history.append(base)
            if is_misclassified(probs, y_clean):
                fooled = True
                break
            grad = estimate_gradient_zo(loss_fn, current, cfg.population, cfg.smoothing, rng, base_loss=base)
            step = np.float32(cfg.step_size * cfg.step_factor / np.sqrt(t + 1))
            current = project(current + step * np.sign(grad).astype(np.float32), x0, cfg.epsilon)
            t += 1
    except BudgetExhausted:
        pass

    return finish('zo-signsgd', oracle, x0, current, y_clean, history, fooled)
