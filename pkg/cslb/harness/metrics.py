"""
metrics.py

Attack failure rate and clean accuracy.
"""
# Standard Imports
from typing import Any, Optional, Sequence, Tuple

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.attacks.Oracle import CLEAN_STREAM
from cslb.data.Dataset import Dataset
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.defenses.preprocess import defended_forward
from cslb.errors import InvalidInputError, UndefinedAFRError
from cslb.nn.Model import Model


def _succeeded(result: Any) -> bool:
    return bool(result['success'] if isinstance(result, dict) else result.success)


def afr(results: Sequence[Any], initially_correct: Sequence[bool]) -> float:
    """
    Fraction of initially-correct samples whose attack failed.

    Inputs
    ------
    results: sequence
        AttackResult (or its dict form) per sample; entries of excluded samples
        are ignored and may be None.
    initially_correct: sequence of bool
        Denominator mask, aligned with `results`.
    """
    if len(results) != len(initially_correct):
        raise InvalidInputError(f"{len(results)} results for a mask of {len(initially_correct)}")
    kept = [r for r, correct in zip(results, initially_correct) if correct]
    if not kept:
        raise UndefinedAFRError("AFR is undefined without initially-correct samples")
    failed = sum(1 for r in kept if not _succeeded(r))
    return failed / len(kept)


def query_stats(results: Sequence[Any], initially_correct: Sequence[bool]) -> Tuple[Optional[float], Optional[float]]:
    """(mean, median) queries of the successful attacks; None when none succeeded."""
    queries = []
    for result, correct in zip(results, initially_correct):
        if correct and result is not None and _succeeded(result):
            queries.append(result['queries_used'] if isinstance(result, dict) else result.queries_used)
    if not queries:
        return None, None
    return float(np.mean(queries)), float(np.median(queries))


def clean_accuracy(model: Model, defense: DefenseConfig, dataset: Dataset, trials: int = 1, seed: int = 0) -> float:
    """
    Mean over `trials` noise draws of the fraction of samples whose defended
    label equals the true label. Deterministic defenses are evaluated once.
    """
    if trials < 1:
        raise InvalidInputError(f"trials={trials} < 1")
    if len(dataset) == 0:
        raise InvalidInputError("clean_accuracy needs a nonempty dataset")
    if not defense.is_noisy:
        trials = 1

    fractions = []
    for trial in range(trials):
        correct = 0
        for index in range(len(dataset)):
            _, label = defended_forward(model, dataset.images[index], defense, (seed, CLEAN_STREAM, trial, index))
            correct += int(label == dataset.labels[index])
        fractions.append(correct / len(dataset))
    return float(np.mean(fractions))
