"""
strict.py

Strict dictionary -> dataclass conversion shared by the config records.
Unknown keys are rejected with the dotted path of the offending key.
"""
# Standard Imports
from dataclasses import fields, is_dataclass
from typing import Any, Dict, Type, TypeVar

# Project-Specific Imports
from cslb.errors import ConfigError

T = TypeVar('T')


def from_dict_strict(cls: Type[T], data: Dict[str, Any], path: str, renames: Dict[str, str] = None) -> T:
    """
    Inputs
    ------
    cls
        Target dataclass.
    data: dict
        Parsed JSON object.
    path: str
        Dotted location of `data` in the config document, for error messages.
    renames: dict
        JSON key -> field name for keys that are not valid identifiers.
    """
    if not is_dataclass(cls):
        raise TypeError(f"{cls!r} is not a dataclass")
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must be an object, got {type(data).__name__}")

    renames = renames or {}
    known = {f.name for f in fields(cls)}
    kwargs = {}
    for key, value in data.items():
        name = renames.get(key, key.replace('-', '_'))
        if name not in known:
            raise ConfigError(f"Unknown key {path}.{key}; valid keys: {sorted(known)}")
        kwargs[name] = value

    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{path}: {e}") from e
