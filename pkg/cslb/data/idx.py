"""
This script contains the parsers and writers for IDX image/label files (the
MNIST distribution format).

This file can be ran to inspect an IDX pair.

File layout (big-endian):
    [offset] [type]          [value]          [description]
    0000     32 bit integer  0x00000803       magic number (images)
    0004     32 bit integer  N                number of images
    0008     32 bit integer  H                number of rows
    0012     32 bit integer  W                number of columns
    0016     unsigned byte   ??               pixels, row-major

    0000     32 bit integer  0x00000801       magic number (labels)
    0004     32 bit integer  N                number of labels
    0008     unsigned byte   ??               labels
"""
# Standard Imports
import argparse
import gzip
import struct
from pathlib import Path
from typing import Union

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.data.Dataset import Dataset
from cslb.errors import IdxMagicError, IdxTruncatedError

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801


def _read_header(data: bytes, magic: int, dims: int):
    """Check the magic and return the `dims` big-endian sizes that follow it."""
    header_size = 4 * (dims + 1)
    if len(data) < 4:
        raise IdxTruncatedError(offset=len(data), needed=header_size)

    actual = struct.unpack_from('>I', data, 0)[0]
    if actual != magic:
        raise IdxMagicError(expected=magic, actual=actual)
    if len(data) < header_size:
        raise IdxTruncatedError(offset=len(data), needed=header_size)

    return struct.unpack_from(f'>{dims}I', data, 4), header_size


def parse_idx_images(data: bytes) -> np.ndarray:
    """
    Decode an unsigned-byte, 3-dimensional IDX image file.

    Inputs
    ------
    data: bytes
        Raw file contents (already decompressed).

    Returns
    -------
    np.ndarray
        float32 array of shape [N, 1, H, W] scaled by 1/255 into [0, 1].
    """
    (n, h, w), offset = _read_header(data, IMAGES_MAGIC, 3)
    needed = offset + n * h * w
    if len(data) < needed:
        raise IdxTruncatedError(offset=len(data), needed=needed)

    pixels = np.frombuffer(data, dtype=np.uint8, count=n * h * w, offset=offset)
    return (pixels.reshape(n, 1, h, w).astype(np.float32) / np.float32(255.0))


def parse_idx_labels(data: bytes) -> np.ndarray:
    """Decode an unsigned-byte IDX label file into a uint8 array of N labels."""
    (n,), offset = _read_header(data, LABELS_MAGIC, 1)
    needed = offset + n
    if len(data) < needed:
        raise IdxTruncatedError(offset=len(data), needed=needed)
    return np.frombuffer(data, dtype=np.uint8, count=n, offset=offset).copy()


def serialize_idx_images(images: np.ndarray) -> bytes:
    """Inverse of parse_idx_images for [N, 1, H, W] arrays in [0, 1]."""
    images = np.asarray(images)
    n, _, h, w = images.shape
    pixels = np.rint(np.clip(images, 0.0, 1.0) * 255.0).astype(np.uint8)
    return struct.pack('>4I', IMAGES_MAGIC, n, h, w) + pixels.tobytes()


def serialize_idx_labels(labels: np.ndarray) -> bytes:
    labels = np.asarray(labels, dtype=np.uint8)
    return struct.pack('>2I', LABELS_MAGIC, labels.shape[0]) + labels.tobytes()


def _read_bytes(path: Union[str, Path]) -> bytes:
    path = Path(path)
    # MNIST mirrors ship gzipped files; accept both forms
    if path.suffix == '.gz':
        with gzip.open(path, 'rb') as handle:
            return handle.read()
    return path.read_bytes()


def load_idx_dataset(images_path: Union[str, Path], labels_path: Union[str, Path],
                     num_classes: int = 10, name: str = None) -> Dataset:
    """Read an IDX image/label pair from disk into a validated Dataset."""
    images = parse_idx_images(_read_bytes(images_path))
    labels = parse_idx_labels(_read_bytes(labels_path))
    logger.info(f"Read {images.shape[0]} images of {images.shape[2]}x{images.shape[3]} from {images_path}")
    return Dataset(images, labels, num_classes, name or Path(images_path).name)


if __name__ == '__main__':

    parser = argparse.ArgumentParser(description="Inspect an IDX image/label file pair")
    parser.add_argument('--images', type=str, required=True, help="Path to the IDX image file")
    parser.add_argument('--labels', type=str, required=True, help="Path to the IDX label file")
    parser.add_argument('--num-classes', type=int, default=10)
    args = parser.parse_args()

    dataset = load_idx_dataset(args.images, args.labels, args.num_classes)

    print(f"Name:          {dataset.name}")
    print(f"Samples:       {len(dataset)}")
    print(f"Sample shape:  {dataset.sample_shape}")
    print(f"Label counts:  {np.bincount(dataset.labels, minlength=dataset.num_classes).tolist()}")
