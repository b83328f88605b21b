"""
config.py

Strict JSON run configuration. Every section is a dataclass, unknown keys at
any level are rejected with their dotted path, and values resolve with the
precedence CLI flag > CSLB_SEED (seed only) > config file > profile > default.
"""
# Standard Imports
from __future__ import annotations
import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

# Third-Party Imports
from dotenv import load_dotenv

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.attacks.base import AttackConfig, ATTACK_KINDS
from cslb.data.Dataset import Dataset
from cslb.data.idx import load_idx_dataset
from cslb.data.synthetic import synth_blobs, train_test_split
from cslb.defenses.DefenseConfig import DefenseConfig, DEFENSE_KINDS
from cslb.errors import ConfigError
from cslb.strict import from_dict_strict

load_dotenv()

PROFILES = {
    'ci': {'n': 100, 'budget': 2000},
    'paper': {'n': 1000, 'budget': 10000},
}
ARCHITECTURES = ('desk-cnn', 'mlp', 'linear')
DATA_FORMATS = ('idx', 'synth')
IDX_KEYS = ('train_images', 'train_labels', 'test_images', 'test_labels')


@dataclass
class ModelSection:
    arch: str = 'desk-cnn'
    weights_path: Optional[str] = None
    hidden: List[int] = field(default_factory=lambda: [32])

    def __post_init__(self):
        if self.arch not in ARCHITECTURES:
            raise ConfigError(f"Unknown model.arch {self.arch!r}; valid: {list(ARCHITECTURES)}")


@dataclass
class DataSection:
    """
    format 'idx' reads the four IDX paths; format 'synth' generates Gaussian
    blobs and splits off `test_fraction` of them.
    """
    format: str = 'synth'
    train_images: Optional[str] = None
    train_labels: Optional[str] = None
    test_images: Optional[str] = None
    test_labels: Optional[str] = None
    num_classes: int = 10
    per_class: int = 200
    dim: int = 4
    separation: float = 10.0
    seed: int = 0
    test_fraction: float = 0.25

    def __post_init__(self):
        if self.format not in DATA_FORMATS:
            raise ConfigError(f"Unknown data.format {self.format!r}; valid: {list(DATA_FORMATS)}")
        if self.format == 'idx':
            for key in IDX_KEYS:
                value = getattr(self, key)
                if value is None:
                    raise ConfigError(f"Missing required key data.{key}")
                if not Path(value).is_file():
                    raise ConfigError(f"data.{key}: no such file {value}")

    def load(self) -> Tuple[Dataset, Dataset]:
        """(train, test) datasets."""
        if self.format == 'idx':
            train = load_idx_dataset(self.train_images, self.train_labels, self.num_classes, name='train')
            test = load_idx_dataset(self.test_images, self.test_labels, self.num_classes, name='test')
            return train, test
        blobs = synth_blobs(self.num_classes, self.per_class, self.dim, self.separation, self.seed)
        return train_test_split(blobs, self.test_fraction, self.seed)


@dataclass
class TrainSection:
    epochs: int = 5
    learning_rate: float = 0.05
    batch_size: int = 32
    seed: int = 0


@dataclass
class ExperimentSection:
    profile: str = 'ci'
    n: Optional[int] = None
    budget: Optional[int] = None
    m_values: List[int] = field(default_factory=lambda: [1, 5, 10])
    step_factors: List[float] = field(default_factory=lambda: [1.0, 2.0, 10.0])
    seed: int = 0
    clean_trials: int = 1
    alphas: List[float] = field(default_factory=lambda: [0.0, 0.01, 0.05, 0.1, 0.5, 1.0])
    ks: List[int] = field(default_factory=lambda: [0, 1, 5, 10, 20, 50])
    fixed_k: int = 10
    fixed_alpha: float = 0.1

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ConfigError(f"Unknown experiment.profile {self.profile!r}; valid: {list(PROFILES)}")

    @property
    def sample_count(self) -> int:
        return self.n if self.n is not None else PROFILES[self.profile]['n']

    @property
    def query_budget(self) -> int:
        return self.budget if self.budget is not None else PROFILES[self.profile]['budget']


@dataclass
class OutputSection:
    dir: str = 'results'


@dataclass
class RunConfig:
    model: ModelSection = field(default_factory=ModelSection)
    data: DataSection = field(default_factory=DataSection)
    train: TrainSection = field(default_factory=TrainSection)
    defenses: List[DefenseConfig] = field(default_factory=lambda: [DefenseConfig(kind='counter-sample')])
    attacks: List[AttackConfig] = field(default_factory=lambda: [AttackConfig(kind='nes')])
    experiment: ExperimentSection = field(default_factory=ExperimentSection)
    output: OutputSection = field(default_factory=OutputSection)

    @property
    def weights_path(self) -> str:
        if not self.model.weights_path:
            raise ConfigError("Missing required key model.weights_path")
        return self.model.weights_path

    def find_defense(self, name: str) -> DefenseConfig:
        """A configured defense by name or kind, else the default config of that kind."""
        for defense in self.defenses:
            if name in (defense.name, defense.kind):
                return defense
        if name in DEFENSE_KINDS:
            return DefenseConfig(kind=name)
        valid = sorted({d.name for d in self.defenses} | set(DEFENSE_KINDS))
        raise ConfigError(f"Unknown defense {name!r}; valid names: {valid}")

    def find_attack(self, name: str) -> AttackConfig:
        for attack in self.attacks:
            if name in (attack.name, attack.kind):
                return attack
        if name in ATTACK_KINDS:
            return AttackConfig(kind=name)
        valid = sorted({a.name for a in self.attacks} | set(ATTACK_KINDS))
        raise ConfigError(f"Unknown attack {name!r}; valid names: {valid}")


def _list_of(items: Any, path: str) -> List[Any]:
    if not isinstance(items, list):
        raise ConfigError(f"{path} must be a list, got {type(items).__name__}")
    return items


def parse_config(data: Dict[str, Any]) -> RunConfig:
    """RunConfig from a parsed JSON document; unknown keys raise ConfigError."""
    if not isinstance(data, dict):
        raise ConfigError(f"config must be an object, got {type(data).__name__}")
    sections = {
        'model': ModelSection,
        'data': DataSection,
        'train': TrainSection,
        'experiment': ExperimentSection,
        'output': OutputSection,
    }
    known = sorted([*sections, 'defenses', 'attacks'])
    kwargs = {}
    for key, value in data.items():
        if key in sections:
            kwargs[key] = from_dict_strict(sections[key], value, key)
        elif key == 'defenses':
            kwargs[key] = [DefenseConfig.from_dict(d, f'defenses[{i}]') for i, d in enumerate(_list_of(value, key))]
        elif key == 'attacks':
            kwargs[key] = [AttackConfig.from_dict(a, f'attacks[{i}]') for i, a in enumerate(_list_of(value, key))]
        else:
            raise ConfigError(f"Unknown key {key}; valid keys: {known}")
    return RunConfig(**kwargs)


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {path}: {e.msg} at line {e.lineno} column {e.colno}") from e
    logger.debug(f"Loaded config {path}")
    return parse_config(data)


def env_seed() -> Optional[int]:
    """CSLB_SEED from the environment or a .env file."""
    value = os.getenv('CSLB_SEED')
    if value is None or value == '':
        return None
    try:
        seed = int(value)
    except ValueError:
        raise ConfigError(f"CSLB_SEED must be a non-negative integer, got {value!r}")
    if seed < 0:
        raise ConfigError(f"CSLB_SEED must be a non-negative integer, got {value!r}")
    return seed


def apply_overrides(config: RunConfig, seed: int = None, n: int = None, budget: int = None,
                    profile: str = None, output: str = None) -> RunConfig:
    """Layer the environment and CLI flags over a parsed config."""
    experiment = config.experiment
    if profile is not None:
        experiment = replace(experiment, profile=profile)
    seed = seed if seed is not None else env_seed()
    changes = {k: v for k, v in (('seed', seed), ('n', n), ('budget', budget)) if v is not None}
    if changes:
        experiment = replace(experiment, **changes)
    config = replace(config, experiment=experiment)
    if output is not None:
        config = replace(config, output=OutputSection(dir=output))
    return config
