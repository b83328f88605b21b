"""
losses.py

Softmax and the cross-entropy loss (the only LossKind) on logits.
"""
# Standard Imports
from enum import Enum

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.errors import InvalidInputError


class LossKind(Enum):
    CROSS_ENTROPY = 'cross-entropy-with-softmax'


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax over the last axis, shifted by the max for stability."""
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def _check_labels(labels: np.ndarray, num_classes: int):
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise InvalidInputError(f"label out of range [0, {num_classes}): {labels.tolist()}")


def loss(logits: np.ndarray, label: int, kind: LossKind = LossKind.CROSS_ENTROPY) -> float:
    """
    Cross-entropy of softmax(logits) at `label` for a single logit vector.

    Inputs
    ------
    logits: np.ndarray
        Logit vector of length num_classes.
    label: int
        Class index, 0 <= label < num_classes.
    kind: LossKind

    Returns
    -------
    float
        Nonnegative, finite loss value.
    """
    logits = np.asarray(logits)
    _check_labels(np.asarray([label]), logits.shape[-1])
    return float(max(-log_softmax(logits)[int(label)], 0.0))


def batch_loss_and_grad(logits: np.ndarray, labels: np.ndarray, kind: LossKind = LossKind.CROSS_ENTROPY):
    """
    Mean cross-entropy over a batch and its gradient with respect to the logits.

    Returns
    -------
    tuple
        (mean loss as float, dL/dlogits with the same shape as `logits`)
    """
    labels = np.asarray(labels, dtype=np.int64)
    _check_labels(labels, logits.shape[-1])
    batch = logits.shape[0]
    log_probs = log_softmax(logits)
    rows = np.arange(batch)
    value = float(-log_probs[rows, labels].mean())

    grad = np.exp(log_probs)
    grad[rows, labels] -= 1
    grad /= batch
    return value, grad.astype(logits.dtype, copy=False)
