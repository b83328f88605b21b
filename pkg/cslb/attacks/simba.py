"""
simba.py

Coordinate search over the pixel basis: visit coordinates in a random order,
try +step then -step along each, and keep the first move that strictly lowers
the clean-class probability.
"""
# Standard Imports
from typing import Sequence

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.attacks.base import AttackConfig, AttackResult, attacker_loss, project, is_misclassified, finish
from cslb.errors import BudgetExhausted


def attack_simba(oracle, x: np.ndarray, y_clean: int, cfg: AttackConfig, nonce: Sequence[int] = ()) -> AttackResult:
    x0 = np.asarray(x, dtype=np.float32)
    rng = np.random.default_rng([cfg.seed, *nonce])
    step = np.float32(cfg.simba_step_size * cfg.step_factor)
    history = []
    current, fooled = x0.copy(), False

    try:
        probs = oracle.query(current)
        best = float(probs[y_clean])
        history.append(attacker_loss(probs, y_clean))
        fooled = is_misclassified(probs, y_clean)

        while not fooled:
            queried = False
            for index in rng.permutation(x0.size):
                for sign in (1.0, -1.0):
                    candidate = current.copy().reshape(-1)
                    candidate[index] += np.float32(sign) * step
                    candidate = project(candidate.reshape(x0.shape), x0, cfg.epsilon)
                    if np.array_equal(candidate, current):
                        continue

                    queried = True
                    probs = oracle.query(candidate)
                    accepted = float(probs[y_clean]) < best
                    if accepted:
                        current, best = candidate, float(probs[y_clean])
                        fooled = is_misclassified(probs, y_clean)
                    history.append(attacker_loss(probs, y_clean) if accepted else history[-1])
                    if accepted:
                        break
                if fooled:
                    break
            # Every direction is blocked by the projection
            if not queried:
                break
    except BudgetExhausted:
        pass

    return finish('simba', oracle, x0, current, y_clean, history, fooled)
