"""
trainer.py

Plain mini-batch SGD (fixed learning rate, no momentum) and accuracy
evaluation.
"""
# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.data.Dataset import Dataset
from cslb.errors import InvalidInputError, TrainingError
from cslb.nn.Model import Model
from cslb.nn.losses import LossKind


def train(model: Model, dataset: Dataset, epochs: int, learning_rate: float, batch_size: int, seed: int,
          kind: LossKind = LossKind.CROSS_ENTROPY) -> Model:
    """
    Train `model` on `dataset` and return the updated copy.

    Inputs
    ------
    model: Model
        Starting point; left untouched.
    dataset: Dataset
        Nonempty, labels below model.num_classes.
    epochs, batch_size: int
    learning_rate: float
    seed: int
        Seeds the per-epoch shuffling; identical seeds give bit-identical weights.

    Returns
    -------
    Model
        Trained model. Raises TrainingError naming the epoch if the loss turns
        non-finite.
    """
    if len(dataset) == 0:
        raise InvalidInputError("Cannot train on an empty dataset")
    if dataset.labels.max() >= model.num_classes:
        raise InvalidInputError(f"Dataset has labels >= num_classes ({model.num_classes})")
    if batch_size < 1 or epochs < 0:
        raise InvalidInputError(f"Invalid training schedule: epochs={epochs}, batch_size={batch_size}")

    rng = np.random.default_rng(seed)
    params = [p.copy() for p in model.params]
    current = model.with_params(params)
    lr = np.float32(learning_rate)

    for epoch in range(1, epochs + 1):
        order = rng.permutation(len(dataset))
        epoch_loss, seen = 0.0, 0

        for start in range(0, len(order), batch_size):
            indices = order[start:start + batch_size]
            value, grads = current.param_gradients(dataset.images[indices], dataset.labels[indices], kind)
            if not np.isfinite(value) or not all(np.all(np.isfinite(g)) for g in grads):
                raise TrainingError(epoch)

            params = [p - lr * g.astype(p.dtype, copy=False) for p, g in zip(params, grads)]
            current = current.with_params(params)
            epoch_loss += value * len(indices)
            seen += len(indices)

        logger.info(f"epoch {epoch}/{epochs}: mean training loss {epoch_loss / seen:.6f}")

    return current


def evaluate_accuracy(model: Model, dataset: Dataset, batch_size: int = 512) -> float:
    """Fraction of samples whose argmax prediction equals the label."""
    if len(dataset) == 0:
        return 0.0
    correct = 0
    for start in range(0, len(dataset), batch_size):
        predicted = model.predict(dataset.images[start:start + batch_size])
        correct += int(np.sum(predicted == dataset.labels[start:start + batch_size]))
    return correct / len(dataset)
