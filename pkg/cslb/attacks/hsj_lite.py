"""
hsj_lite.py

Decision-based boundary attack in the HopSkipJump style, l-infinity variant.
It sees labels only: start from a random misclassified image, binary-search
towards the clean sample, then alternate a Monte-Carlo estimate of the boundary
normal, a geometric step along its sign and another binary search.
"""
# Standard Imports
from typing import Callable, Sequence, Tuple

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.attacks.base import AttackConfig, AttackResult, HSJ_INIT_QUERIES, finish
from cslb.errors import BudgetExhausted

MAX_STEP_HALVINGS = 25


def _linf(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def boundary_binary_search(is_adversarial: Callable[[np.ndarray], bool], x0: np.ndarray, x_adv: np.ndarray,
                           tolerance: float, mode: str = 'blend') -> Tuple[np.ndarray, float]:
    """
    Locate the decision boundary between clean `x0` and adversarial `x_adv`.

    Inputs
    ------
    is_adversarial: callable
        One oracle query per call.
    mode: str
        'blend' searches t in [0, 1] along (1 - t) x0 + t x_adv; 'linf' searches
        the radius r of clip(x_adv, x0 - r, x0 + r).
    tolerance: float
        Stop once the bracket is narrower than this (t units or pixel units).

    Returns
    -------
    tuple
        (adversarial point at the upper end of the bracket, that upper end)
    """
    x0 = np.asarray(x0, dtype=np.float32)
    x_adv = np.asarray(x_adv, dtype=np.float32)

    if mode == 'blend':
        def point(t):
            return ((1 - t) * x0 + t * x_adv).astype(np.float32)
        high = 1.0
    elif mode == 'linf':
        def point(r):
            return np.clip(x_adv, x0 - np.float32(r), x0 + np.float32(r)).astype(np.float32)
        high = _linf(x_adv, x0)
    else:
        raise ValueError(f"Unknown binary search mode {mode!r}")

    low = 0.0
    while high - low > tolerance:
        mid = (low + high) / 2
        if is_adversarial(point(mid)):
            high = mid
        else:
            low = mid
    return point(high), high


def estimate_boundary_direction(is_adversarial: Callable[[np.ndarray], bool], x_boundary: np.ndarray,
                                batch: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Unit-norm estimate of the boundary normal from sign agreement of random probes."""
    probes = rng.uniform(-1.0, 1.0, size=(batch, *x_boundary.shape))
    norms = np.sqrt(np.sum(probes.reshape(batch, -1) ** 2, axis=1)).reshape(batch, *([1] * x_boundary.ndim))
    probes = probes / norms

    perturbed = np.clip(x_boundary + radius * probes, 0.0, 1.0).astype(np.float32)
    probes = (perturbed - x_boundary) / radius
    decisions = np.array([1.0 if is_adversarial(p) else -1.0 for p in perturbed])

    if decisions.mean() == 1.0:
        grad = probes.mean(axis=0)
    elif decisions.mean() == -1.0:
        grad = -probes.mean(axis=0)
    else:
        weights = (decisions - decisions.mean()).reshape(batch, *([1] * x_boundary.ndim))
        grad = (weights * probes).mean(axis=0)

    norm = np.linalg.norm(grad.ravel())
    return grad / norm if norm > 0 else grad


def attack_hsj_lite(oracle, x: np.ndarray, y_clean: int, cfg: AttackConfig,
                    nonce: Sequence[int] = ()) -> AttackResult:
    x0 = np.asarray(x, dtype=np.float32)
    rng = np.random.default_rng([cfg.seed, *nonce])
    d = x0.size
    theta = 1.0 / (d * d) if d else 0.0

    def is_adversarial(point: np.ndarray) -> bool:
        return int(oracle.query(point)) != int(y_clean)

    history = []
    boundary, distance = None, float('inf')

    try:
        for _ in range(HSJ_INIT_QUERIES):
            candidate = rng.uniform(0.0, 1.0, size=x0.shape).astype(np.float32)
            if is_adversarial(candidate):
                boundary = candidate
                break
    except BudgetExhausted:
        pass

    if boundary is None:
        logger.debug("hsj-lite found no adversarial starting point")
        return finish('hsj-lite', oracle, x0, x0.copy(), y_clean, history, False,
                      distance=float('inf'), init_failure=True, within_radius=False)

    try:
        boundary, _ = boundary_binary_search(is_adversarial, x0, boundary, cfg.hsj_tolerance, 'blend')
        distance = _linf(boundary, x0)
        history.append(distance)
        iteration = 1

        while distance > cfg.epsilon:
            radius = 0.1 if iteration == 1 else max(d * theta * distance, 1e-6)
            direction = np.sign(estimate_boundary_direction(is_adversarial, boundary, cfg.hsj_batch,
                                                            radius, rng)).astype(np.float32)

            step = distance / np.sqrt(iteration)
            stepped = np.clip(boundary + np.float32(step) * direction, 0.0, 1.0).astype(np.float32)
            halvings = 0
            while not is_adversarial(stepped) and halvings < MAX_STEP_HALVINGS:
                step /= 2
                stepped = np.clip(boundary + np.float32(step) * direction, 0.0, 1.0).astype(np.float32)
                halvings += 1

            if halvings < MAX_STEP_HALVINGS:
                candidate, _ = boundary_binary_search(is_adversarial, x0, stepped, cfg.hsj_tolerance, 'linf')
                if _linf(candidate, x0) < distance:
                    boundary, distance = candidate, _linf(candidate, x0)
            history.append(distance)
            iteration += 1
    except BudgetExhausted:
        pass

    within = distance <= cfg.epsilon + 1e-6
    final = np.clip(boundary, x0 - np.float32(cfg.epsilon), x0 + np.float32(cfg.epsilon)).astype(np.float32)
    return finish('hsj-lite', oracle, x0, final, y_clean, history, within,
                  distance=distance, within_radius=within)
