"""
square.py

Random-search attack over square windows. Starts from vertical stripes of
+/-epsilon, then repeatedly moves one random square window (per channel) by
+/-2 epsilon * step_factor, projects, and keeps the candidate only if the
attacker loss strictly improves. The window side follows the fraction p,
which starts at p_init and halves every fifth of the query budget.
"""
# Standard Imports
from typing import Sequence

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.attacks.base import AttackConfig, AttackResult, attacker_loss, project, is_misclassified, finish
from cslb.errors import BudgetExhausted


def square_fraction(p_init: float, iteration: int, total: int) -> float:
    if total <= 0:
        return p_init
    return p_init / 2 ** min(int(5 * iteration / total), 4)


def window_side(p: float, height: int, width: int) -> int:
    side = int(round(np.sqrt(p * height * width)))
    return int(min(max(side, 1), height, width))


def attack_square(oracle, x: np.ndarray, y_clean: int, cfg: AttackConfig, nonce: Sequence[int] = ()) -> AttackResult:
    x0 = np.asarray(x, dtype=np.float32)
    rng = np.random.default_rng([cfg.seed, *nonce])
    channels, height, width = x0.shape[-3:]
    eps = np.float32(cfg.epsilon)
    change = np.float32(2 * cfg.epsilon * cfg.step_factor)
    total = max(oracle.budget // oracle.cost, 1)
    history = []

    stripes = rng.choice(np.array([-1.0, 1.0], dtype=np.float32), size=(channels, 1, width))
    init = project(x0 + eps * stripes, x0, cfg.epsilon)
    current, fooled, iteration = x0.copy(), False, 0

    try:
        probs = oracle.query(init)
        current = init
        best = attacker_loss(probs, y_clean)
        history.append(best)
        fooled = is_misclassified(probs, y_clean)

        while not fooled:
            side = window_side(square_fraction(cfg.p_init, iteration, total), height, width)
            top = rng.integers(0, height - side + 1)
            left = rng.integers(0, width - side + 1)
            signs = rng.choice(np.array([-1.0, 1.0], dtype=np.float32), size=(channels, 1, 1))

            candidate = current.copy()
            candidate[..., top:top + side, left:left + side] += change * signs
            candidate = project(candidate, x0, cfg.epsilon)
            iteration += 1

            probs = oracle.query(candidate)
            value = attacker_loss(probs, y_clean)
            if value > best:
                current, best = candidate, value
                fooled = is_misclassified(probs, y_clean)
            history.append(best)
    except BudgetExhausted:
        pass

    return finish('square', oracle, x0, current, y_clean, history, fooled)
