"""
weights.py

Weight file codec. Layout:

    [offset] [type]                 [description]
    0000     4 bytes                magic "CSLB"
    0004     unsigned byte          format version (1)
    0005     32 bit LE integer      header length L
    0009     L bytes UTF-8 JSON     architecture header (Model.describe())
    0009+L   32 bit LE reals        parameters in layer order, weight then bias
"""
# Standard Imports
import json
import struct
from pathlib import Path
from typing import Union

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.errors import (WeightsFormatError, WeightsMagicError, WeightsVersionError,
                         WeightsTruncatedError, WeightsLengthMismatchError, InvalidInputError)
from cslb.nn.Model import Model, model_from_description

MAGIC = b'CSLB'
VERSION = 1
_PREAMBLE = struct.Struct('<4sBI')


def encode_weights(model: Model) -> bytes:
    header = json.dumps(model.describe(), sort_keys=True).encode('utf-8')
    payload = b''.join(np.asarray(p, dtype='<f4').tobytes() for p in model.params)
    return _PREAMBLE.pack(MAGIC, VERSION, len(header)) + header + payload


def decode_weights(blob: bytes) -> Model:
    """
    Decode a weights byte string. Each failure mode raises its own
    WeightsFormatError subclass.
    """
    if len(blob) < 4:
        raise WeightsTruncatedError(f"File holds {len(blob)} bytes, shorter than the magic")
    if blob[:4] != MAGIC:
        raise WeightsMagicError(f"Bad magic {blob[:4]!r}, expected {MAGIC!r}")
    if len(blob) < _PREAMBLE.size:
        raise WeightsTruncatedError(f"File ends inside the preamble at byte {len(blob)}")

    _, version, header_length = _PREAMBLE.unpack_from(blob)
    if version != VERSION:
        raise WeightsVersionError(f"Unsupported weights version {version}, expected {VERSION}")

    header_end = _PREAMBLE.size + header_length
    if len(blob) < header_end:
        raise WeightsTruncatedError(f"File ends at byte {len(blob)} inside a {header_length}-byte header")
    try:
        header = json.loads(blob[_PREAMBLE.size:header_end].decode('utf-8'))
        skeleton = model_from_description(header)
    except (UnicodeDecodeError, json.JSONDecodeError, KeyError, TypeError, InvalidInputError) as e:
        raise WeightsFormatError(f"Unreadable architecture header: {e}") from e

    payload = blob[header_end:]
    if len(payload) % 4:
        raise WeightsTruncatedError(f"Parameter payload of {len(payload)} bytes is not a whole number of reals")
    stored = len(payload) // 4
    declared = int(header.get('param_count', -1))
    if declared != skeleton.num_params:
        raise WeightsLengthMismatchError(
            f"Header declares {declared} params but the architecture needs {skeleton.num_params}")
    if stored != declared:
        raise WeightsLengthMismatchError(f"Header declares {declared} params but {stored} are stored")

    flat = np.frombuffer(payload, dtype='<f4').astype(np.float32)
    params, cursor = [], 0
    for p in skeleton.params:
        params.append(flat[cursor:cursor + p.size].reshape(p.shape).copy())
        cursor += p.size
    return skeleton.with_params(params)


def save_weights(model: Model, path: Union[str, Path]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_weights(model))
    logger.info(f"Saved {model.num_params} parameters to {path}")


def load_weights(path: Union[str, Path]) -> Model:
    path = Path(path)
    model = decode_weights(path.read_bytes())
    logger.info(f"Loaded {model.num_params} parameters from {path}")
    return model
