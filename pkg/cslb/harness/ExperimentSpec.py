"""
ExperimentSpec.py

Everything an experiment run depends on. Reports are a pure function of this
record: no field is filled from ambient randomness, and the thread count does
not enter the report.
"""
# Standard Imports
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional

# Project-Specific Imports
from cslb.attacks.base import AttackConfig
from cslb.data.Dataset import Dataset
from cslb.data.synthetic import subsample
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.errors import ConfigError
from cslb.nn.Model import Model


@dataclass
class ExperimentSpec:
    """
    Args:
        model (Model): the classifier under attack
        dataset (Dataset): pool the n evaluation samples are drawn from
        defenses (list): DefenseConfig per grid row
        attacks (list): AttackConfig per grid column
        n (int): evaluation samples
        budget (int): attacker queries per sample (multiplied by M under averaging)
        m_values (list): query repetitions for adaptive averaging
        step_factors (list): attacker step multipliers for adaptive step-size scaling
        seed (int): experiment seed
        clean_trials (int): noise draws averaged by clean accuracy
        threads (int): worker threads of the cell runner
        output_dir (str): report directory
        model_path (str): weights file, recorded in the report metadata
    """
    model: Model
    dataset: Dataset
    defenses: List[DefenseConfig]
    attacks: List[AttackConfig]
    n: int = 100
    budget: int = 2000
    m_values: List[int] = field(default_factory=lambda: [1, 5, 10])
    step_factors: List[float] = field(default_factory=lambda: [1.0, 2.0, 10.0])
    seed: int = 0
    clean_trials: int = 1
    threads: int = 1
    output_dir: str = 'results'
    model_path: Optional[str] = None

    def __post_init__(self):
        problems = []
        if self.n < 1:
            problems.append(f"n={self.n} < 1")
        elif self.n > len(self.dataset):
            problems.append(f"n={self.n} exceeds the {len(self.dataset)} available samples")
        if self.budget < 0:
            problems.append(f"budget={self.budget} < 0")
        if not self.defenses:
            problems.append("no defenses")
        if not self.attacks:
            problems.append("no attacks")
        if not self.m_values or min(self.m_values) < 1:
            problems.append(f"m_values={self.m_values} must be nonempty and >= 1")
        if not self.step_factors or min(self.step_factors) <= 0:
            problems.append(f"step_factors={self.step_factors} must be nonempty and > 0")
        if self.seed < 0:
            problems.append(f"seed={self.seed} < 0")
        if self.clean_trials < 1:
            problems.append(f"clean_trials={self.clean_trials} < 1")
        if self.threads < 1:
            problems.append(f"threads={self.threads} < 1")
        if problems:
            raise ConfigError(f"Invalid experiment: {', '.join(problems)}")

        self.m_values = [int(m) for m in self.m_values]
        self.step_factors = [float(f) for f in self.step_factors]

    @cached_property
    def samples(self) -> Dataset:
        """The n evaluation samples, drawn without replacement under `seed`."""
        return subsample(self.dataset, self.n, self.seed)

    def metadata(self) -> Dict[str, Any]:
        return {
            'seed': self.seed,
            'n': self.n,
            'budget': self.budget,
            'clean_trials': self.clean_trials,
            'm_values': list(self.m_values),
            'step_factors': list(self.step_factors),
            'model_path': self.model_path,
            'model': self.model.describe(),
            'dataset': {'name': self.dataset.name, 'size': len(self.dataset),
                        'num_classes': self.dataset.num_classes},
            'defenses': [d.to_dict() for d in self.defenses],
            'attacks': [a.to_dict() for a in self.attacks],
        }
