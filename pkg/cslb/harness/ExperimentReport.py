"""
ExperimentReport.py

Report records. A CellResult is one (defense, attack, M, step_factor) cell;
an ExperimentReport groups cells into sections next to clean accuracies and
sweep curves.
"""
# Standard Imports
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

SECTIONS = ('grid', 'adaptive_averaging', 'adaptive_stepsize')
CSV_COLUMNS = ['defense', 'attack', 'M', 'step_factor', 'afr', 'mean_queries', 'n']


@dataclass
class CellResult:
    defense: str
    attack: str
    M: int
    step_factor: float
    afr: Optional[float]
    mean_queries: Optional[float]
    median_queries: Optional[float]
    n: int
    defended_correct: List[bool]
    undefended_correct: List[bool]
    results: List[Optional[Dict[str, Any]]]
    defense_config: Dict[str, Any]
    attack_config: Dict[str, Any]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def row(self) -> Dict[str, Any]:
        """One grid.csv row."""
        return {
            'defense': self.defense,
            'attack': self.attack,
            'M': self.M,
            'step_factor': self.step_factor,
            'afr': self.afr,
            'mean_queries': self.mean_queries,
            'n': self.n,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            'defense': self.defense,
            'attack': self.attack,
            'M': self.M,
            'step_factor': self.step_factor,
            'afr': self.afr,
            'mean_queries': self.mean_queries,
            'median_queries': self.median_queries,
            'n': self.n,
            'error': self.error,
            'defended_correct': list(self.defended_correct),
            'undefended_correct': list(self.undefended_correct),
            'results': list(self.results),
            'defense_config': dict(self.defense_config),
            'attack_config': dict(self.attack_config),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> CellResult:
        return cls(**data)


@dataclass
class ExperimentReport:
    metadata: Dict[str, Any]
    clean_accuracy: Dict[str, float] = field(default_factory=dict)
    sections: Dict[str, List[CellResult]] = field(default_factory=dict)
    sweeps: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    # Wall-clock seconds per stage; written to timing.json, never to report.json
    timings: Dict[str, float] = field(default_factory=dict, compare=False)

    def cells(self, section: str = None) -> List[CellResult]:
        if section is not None:
            return list(self.sections.get(section, []))
        return [cell for name in SECTIONS for cell in self.sections.get(name, [])]

    def merge(self, other: ExperimentReport) -> ExperimentReport:
        """Fold the sections, sweeps and accuracies of `other` into this report."""
        self.clean_accuracy.update(other.clean_accuracy)
        self.sections.update(other.sections)
        self.sweeps.update(other.sweeps)
        self.timings.update(other.timings)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            'metadata': self.metadata,
            'clean_accuracy': dict(self.clean_accuracy),
            'sections': {name: [cell.to_dict() for cell in self.sections[name]]
                         for name in SECTIONS if name in self.sections},
            'sweeps': self.sweeps,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> ExperimentReport:
        sections = {name: [CellResult.from_dict(c) for c in cells]
                    for name, cells in data.get('sections', {}).items()}
        return cls(metadata=data['metadata'], clean_accuracy=data.get('clean_accuracy', {}),
                   sections=sections, sweeps=data.get('sweeps', {}))
