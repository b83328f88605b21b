"""
Dataset.py

Labelled image collection in the canonical [N, C, H, W] layout with pixels in
[0, 1]. Construction validates both ranges, so every Dataset in circulation
satisfies them.
"""
# Standard Imports
from __future__ import annotations
from dataclasses import dataclass

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.errors import InvalidInputError


@dataclass(frozen=True)
class Dataset:
    """
    Args:
        images (np.ndarray): float32 array of shape [N, C, H, W], values in [0, 1]
        labels (np.ndarray): int64 array of N class indices
        num_classes (int): number of classes, every label is below it
        name (str): display name used in reports
    """

    images: np.ndarray
    labels: np.ndarray
    num_classes: int
    name: str = 'dataset'

    def __post_init__(self):
        images = np.asarray(self.images, dtype=np.float32)
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)

        if images.ndim != 4:
            raise InvalidInputError(f"Dataset images must be [N, C, H, W], got shape {images.shape}")
        if images.shape[0] != labels.shape[0]:
            raise InvalidInputError(f"{images.shape[0]} images but {labels.shape[0]} labels")
        if self.num_classes < 1:
            raise InvalidInputError(f"num_classes must be positive, got {self.num_classes}")
        if images.size and (not np.all(np.isfinite(images)) or images.min() < 0.0 or images.max() > 1.0):
            raise InvalidInputError("Dataset pixels must lie in [0, 1]")
        if labels.size and (labels.min() < 0 or labels.max() >= self.num_classes):
            bad = labels[(labels < 0) | (labels >= self.num_classes)]
            raise InvalidInputError(f"Dataset labels {sorted(set(bad.tolist()))} outside [0, {self.num_classes})")

        # Frozen dataclass: write the normalized arrays through object.__setattr__
        object.__setattr__(self, 'images', images)
        object.__setattr__(self, 'labels', labels)

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    @property
    def sample_shape(self):
        return tuple(self.images.shape[1:])

    def take(self, indices, name: str = None) -> Dataset:
        """Dataset restricted to `indices`, in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.images[indices], self.labels[indices], self.num_classes, name or self.name)
