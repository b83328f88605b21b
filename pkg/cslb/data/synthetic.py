"""
synthetic.py

Seeded synthetic datasets and deterministic subsampling/splitting.
"""
# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.data.Dataset import Dataset
from cslb.errors import InvalidInputError


def synth_blobs(num_classes: int, per_class: int, dim: int, separation: float, seed: int) -> Dataset:
    """
    Isotropic unit-variance Gaussian clusters, one per class, laid out as a
    [N, 1, 1, dim] image dataset.

    Centers are drawn at random and scaled so that the smallest pairwise
    distance equals `separation`. The whole point cloud is then mapped into
    [0, 1] by one scalar affine map (centers +- 3 sigma span the unit range) and
    clipped.
    """
    if separation <= 0:
        raise InvalidInputError(f"separation must be positive, got {separation}")
    if num_classes < 1 or per_class < 0 or dim < 1:
        raise InvalidInputError(f"Invalid blob parameters: classes={num_classes}, per_class={per_class}, dim={dim}")

    rng = np.random.default_rng(seed)
    centers = rng.standard_normal((num_classes, dim))
    if num_classes > 1:
        gaps = np.linalg.norm(centers[:, None, :] - centers[None, :, :], axis=-1)
        closest = gaps[np.triu_indices(num_classes, k=1)].min()
        centers *= separation / closest

    points = np.repeat(centers, per_class, axis=0) + rng.standard_normal((num_classes * per_class, dim))
    labels = np.repeat(np.arange(num_classes), per_class)

    low, high = centers.min() - 3.0, centers.max() + 3.0
    images = np.clip((points - low) / (high - low), 0.0, 1.0)

    return Dataset(images.reshape(-1, 1, 1, dim).astype(np.float32), labels, num_classes,
                   name=f'blobs-{num_classes}x{per_class}-d{dim}')


def subsample(dataset: Dataset, n: int, seed: int) -> Dataset:
    """`n` samples drawn without replacement, in draw order."""
    return dataset.take(subsample_indices(dataset, n, seed))


def subsample_indices(dataset: Dataset, n: int, seed: int) -> np.ndarray:
    """The index set `subsample` would draw, for callers that track provenance."""
    if n < 0 or n > len(dataset):
        raise InvalidInputError(f"Cannot draw {n} samples from a dataset of {len(dataset)}")
    return np.random.default_rng(seed).choice(len(dataset), size=n, replace=False)


def train_test_split(dataset: Dataset, test_fraction: float, seed: int):
    """Shuffle once and split off the last `test_fraction` as a held-out set."""
    if not 0.0 < test_fraction < 1.0:
        raise InvalidInputError(f"test_fraction must be in (0, 1), got {test_fraction}")
    order = np.random.default_rng(seed).permutation(len(dataset))
    cut = len(dataset) - int(round(len(dataset) * test_fraction))
    return (dataset.take(order[:cut], name=f'{dataset.name}-train'),
            dataset.take(order[cut:], name=f'{dataset.name}-test'))
