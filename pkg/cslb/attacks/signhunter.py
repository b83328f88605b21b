"""
signhunter.py

Divide-and-conquer sign search. The perturbation is epsilon * s for a sign
vector s that starts all +1; at level h the coordinates are split into 2^h
contiguous chunks, each chunk is flipped in turn and the flip is kept only if
the loss strictly increases. After the single-coordinate level the search
restarts at h = 0.
"""
# Standard Imports
import math
from typing import Callable, Sequence, Tuple

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.attacks.base import AttackConfig, AttackResult, attacker_loss, project, is_misclassified, finish
from cslb.errors import BudgetExhausted


class SignHunter:
    """
    Inputs
    ------
    loss_fn: callable
        Maps a candidate point to the loss being maximized.
    x: np.ndarray
        Centre point.
    epsilon: float
    """

    def __init__(self, loss_fn: Callable[[np.ndarray], float], x: np.ndarray, epsilon: float):
        self._loss_fn = loss_fn
        self._x = np.asarray(x, dtype=np.float32)
        self._epsilon = np.float32(epsilon)
        self._signs = np.ones(self._x.size, dtype=np.float32)
        self._level = 0
        self._chunk = 0
        self.best_loss = None
        self.queries = 0

    @property
    def signs(self) -> np.ndarray:
        return self._signs.reshape(self._x.shape)

    def candidate(self, signs: np.ndarray = None) -> np.ndarray:
        signs = self._signs if signs is None else signs
        return self._x + self._epsilon * signs.reshape(self._x.shape)

    def _evaluate(self, signs: np.ndarray) -> float:
        value = self._loss_fn(self.candidate(signs))
        self.queries += 1
        return value

    def step(self) -> bool:
        """One loss evaluation; returns True when it improved the best loss."""
        if self.best_loss is None:
            self.best_loss = self._evaluate(self._signs)
            return False

        d = self._signs.size
        chunk_len = math.ceil(d / 2 ** self._level)
        start = self._chunk * chunk_len
        stop = min(start + chunk_len, d)

        trial = self._signs.copy()
        trial[start:stop] *= -1
        value = self._evaluate(trial)
        improved = value > self.best_loss
        if improved:
            self._signs, self.best_loss = trial, value

        self._chunk += 1
        if self._chunk * chunk_len >= d:
            self._chunk = 0
            self._level = 0 if chunk_len == 1 else self._level + 1
        return improved


def sign_hunter_search(loss_fn: Callable[[np.ndarray], float], x: np.ndarray, epsilon: float,
                       max_queries: int) -> Tuple[np.ndarray, float, int]:
    """
    Returns
    -------
    tuple
        (best sign vector shaped like x, best loss, queries spent)
    """
    hunter = SignHunter(loss_fn, x, epsilon)
    while hunter.queries < max_queries:
        hunter.step()
    return hunter.signs, hunter.best_loss, hunter.queries


def attack_signhunter(oracle, x: np.ndarray, y_clean: int, cfg: AttackConfig,
                      nonce: Sequence[int] = ()) -> AttackResult:
    x0 = np.asarray(x, dtype=np.float32)
    history = []
    state = {'fooled': None}

    def loss_fn(candidate: np.ndarray) -> float:
        point = project(candidate, x0, cfg.epsilon)
        probs = oracle.query(point)
        value = attacker_loss(probs, y_clean)
        if is_misclassified(probs, y_clean):
            state['fooled'] = point
        return value

    hunter = SignHunter(loss_fn, x0, cfg.epsilon)
    try:
        while state['fooled'] is None:
            hunter.step()
            history.append(hunter.best_loss)
    except BudgetExhausted:
        pass

    if state['fooled'] is not None:
        return finish('signhunter', oracle, x0, state['fooled'], y_clean, history, True)
    final = project(hunter.candidate(), x0, cfg.epsilon) if hunter.best_loss is not None else x0
    return finish('signhunter', oracle, x0, final, y_clean, history, False)
