"""
Oracle.py

The query-counting interface through which an attacker reaches the defended
model. Every evaluation on attacker-supplied input goes through `query` and
costs exactly one unit of budget; the harness' success check goes through
`verify` on its own nonce stream and its own counter.
"""
# Standard Imports
from __future__ import annotations
from typing import Sequence, Tuple, Union

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.defenses.preprocess import defended_forward
from cslb.errors import BudgetExhausted, InvalidInputError
from cslb.nn.Model import Model

ORACLE_MODES = ('score', 'decision')

# Nonce streams
QUERY_STREAM = 0
VERIFY_STREAM = 1
CHECK_STREAM = 2
CLEAN_STREAM = 3

LINF_TOLERANCE = 1e-6


class Oracle:
    """
    Inputs
    ------
    model: Model
    defense: DefenseConfig
    budget: int
        Maximum number of attacker queries.
    mode: str
        'score' returns probability vectors, 'decision' returns labels only.
    nonce_prefix: sequence of int
        Identifies the (experiment, cell, sample) run; query t uses the nonce
        (*nonce_prefix, QUERY_STREAM, t).
    x0: np.ndarray
        Clean sample. With `epsilon`, score-mode queries are asserted to lie in
        the l-infinity ball around it.
    epsilon: float
    """

    def __init__(self, model: Model, defense: DefenseConfig, budget: int = 10_000, mode: str = 'score',
                 nonce_prefix: Sequence[int] = (), x0: np.ndarray = None, epsilon: float = None):
        if mode not in ORACLE_MODES:
            raise InvalidInputError(f"Unknown oracle mode {mode!r}; valid modes: {list(ORACLE_MODES)}")
        if budget < 0:
            raise InvalidInputError(f"budget={budget} < 0")

        self._model = model
        self._defense = defense
        self._budget = int(budget)
        self._mode = mode
        self._prefix = tuple(int(n) for n in nonce_prefix)
        self._x0 = None if x0 is None else np.asarray(x0, dtype=np.float32)
        self._epsilon = epsilon
        self._used = 0
        self._verifications = 0

    # ----- Properties -----
    @property
    def model(self) -> Model:
        return self._model

    @property
    def defense(self) -> DefenseConfig:
        return self._defense

    @property
    def budget(self) -> int:
        return self._budget

    @property
    def used(self) -> int:
        return self._used

    @property
    def remaining(self) -> int:
        return self._budget - self._used

    @property
    def verifications(self) -> int:
        return self._verifications

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def cost(self) -> int:
        """Physical queries consumed by one call to `query`."""
        return 1

    # ----- Queries -----
    def _check_query(self, x: np.ndarray):
        if x.shape != self._model.input_shape:
            raise InvalidInputError(f"Query shape {x.shape} does not match model input shape {self._model.input_shape}")
        if not np.all(np.isfinite(x)) or x.min() < 0.0 or x.max() > 1.0:
            raise InvalidInputError("Query outside the legal pixel range [0, 1]")
        if self._mode == 'score' and self._x0 is not None and self._epsilon is not None:
            distance = float(np.max(np.abs(x - self._x0))) if x.size else 0.0
            if distance > self._epsilon + LINF_TOLERANCE:
                raise InvalidInputError(f"Query at l-inf distance {distance:.6g} exceeds epsilon={self._epsilon}")

    def _evaluate(self, x: np.ndarray, nonce: Tuple[int, ...]) -> Tuple[np.ndarray, int]:
        return defended_forward(self._model, x, self._defense, nonce)

    def query(self, x: np.ndarray) -> Union[np.ndarray, int]:
        """One attacker query: probabilities in score mode, the label in decision mode."""
        if self._used >= self._budget:
            logger.debug(f"Oracle budget of {self._budget} queries exhausted")
            raise BudgetExhausted(f"Query budget of {self._budget} exhausted")
        x = np.asarray(x, dtype=np.float32)
        self._check_query(x)

        probs, label = self._evaluate(x, (*self._prefix, QUERY_STREAM, self._used))
        self._used += 1
        return probs if self._mode == 'score' else label

    def verify(self, x: np.ndarray) -> int:
        """Defended label of `x` for the success check; not charged to the attacker."""
        x = np.asarray(x, dtype=np.float32)
        if x.shape != self._model.input_shape:
            raise InvalidInputError(f"Query shape {x.shape} does not match model input shape {self._model.input_shape}")
        _, label = self._evaluate(x, (*self._prefix, VERIFY_STREAM, self._verifications))
        self._verifications += 1
        return label


def oracle_query(oracle, x: np.ndarray):
    return oracle.query(x)


class AveragedOracle:
    """
    Attacker-side wrapper that sends every logical query M times to the inner
    oracle and returns the mean probability vector. Counters are physical.
    """

    def __init__(self, inner: Oracle, M: int):
        if M < 1:
            raise InvalidInputError(f"M={M} < 1")
        if inner.mode != 'score':
            raise InvalidInputError("Query averaging needs a score-mode oracle")
        self._inner = inner
        self._M = int(M)

    @property
    def M(self) -> int:
        return self._M

    @property
    def model(self) -> Model:
        return self._inner.model

    @property
    def budget(self) -> int:
        return self._inner.budget

    @property
    def used(self) -> int:
        return self._inner.used

    @property
    def remaining(self) -> int:
        return self._inner.remaining

    @property
    def verifications(self) -> int:
        return self._inner.verifications

    @property
    def mode(self) -> str:
        return 'score'

    @property
    def cost(self) -> int:
        return self._M

    def query(self, x: np.ndarray) -> np.ndarray:
        if self._inner.remaining < self._M:
            logger.debug(f"{self._inner.remaining} physical queries left, {self._M} needed")
            raise BudgetExhausted(f"Fewer than M={self._M} physical queries remain")
        draws = np.stack([self._inner.query(x) for _ in range(self._M)])
        # Shifted mean: identical draws reproduce the first draw exactly
        return draws[0] + (draws - draws[0]).mean(axis=0)

    def verify(self, x: np.ndarray) -> int:
        return self._inner.verify(x)


def averaged_view(oracle: Oracle, M: int) -> Union[Oracle, AveragedOracle]:
    """M == 1 hands back the raw oracle."""
    return oracle if M == 1 else AveragedOracle(oracle, M)
