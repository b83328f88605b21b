"""
sweeps.py

Counter-sample hyperparameter sweeps: alpha at fixed k, and k at fixed alpha.
Each point reports clean accuracy and the AFR of every attack in the spec.
"""
# Standard Imports
import time
from dataclasses import replace
from typing import Any, Dict, Sequence

# Project-Specific Imports
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.errors import ConfigError
from cslb.harness.ExperimentReport import ExperimentReport
from cslb.harness.ExperimentSpec import ExperimentSpec
from cslb.harness.grid import run_cells, new_report
from cslb.harness.metrics import clean_accuracy


def base_counter_sample(spec: ExperimentSpec) -> DefenseConfig:
    """First counter-sample defense of the spec, or the default one."""
    for defense in spec.defenses:
        if defense.kind == 'counter-sample':
            return defense
    return DefenseConfig(kind='counter-sample')


def _sweep(spec: ExperimentSpec, parameter: str, values: Sequence[float], fixed: Dict[str, Any],
           timings: Dict[str, float] = None) -> Dict[str, Any]:
    if not values:
        raise ConfigError(f"sweep over {parameter} needs at least one value")
    base = replace(base_counter_sample(spec), label=None, **fixed)
    points = []

    for value in values:
        started = time.perf_counter()
        defense = replace(base, **{parameter: value})
        cells = run_cells(spec, [(defense, attack, 1) for attack in spec.attacks], desc=f'{parameter}={value:g}')
        points.append({
            'value': getattr(defense, parameter),
            'defense': defense.name,
            'clean_accuracy': clean_accuracy(spec.model, defense, spec.samples, spec.clean_trials, spec.seed),
            'afr': {cell.attack: cell.afr for cell in cells},
            'mean_queries': {cell.attack: cell.mean_queries for cell in cells},
            'errors': {cell.attack: cell.error for cell in cells if cell.error},
        })
        if timings is not None:
            timings[f'sweep_{parameter}[{value:g}]'] = time.perf_counter() - started

    return {
        'parameter': parameter,
        'fixed': dict(fixed),
        'base_defense': base.to_dict(),
        'undefended_clean_accuracy': clean_accuracy(spec.model, DefenseConfig(kind='none'), spec.samples),
        'points': points,
    }


def sweep_alpha(spec: ExperimentSpec, alphas: Sequence[float], k: int = 10,
                timings: Dict[str, float] = None) -> Dict[str, Any]:
    return _sweep(spec, 'alpha', [float(a) for a in alphas], {'k': int(k)}, timings)


def sweep_k(spec: ExperimentSpec, ks: Sequence[int], alpha: float = 0.1,
            timings: Dict[str, float] = None) -> Dict[str, Any]:
    return _sweep(spec, 'k', [int(k) for k in ks], {'alpha': float(alpha)}, timings)


def run_sweeps(spec: ExperimentSpec, alphas: Sequence[float] = (), ks: Sequence[int] = (),
               k: int = 10, alpha: float = 0.1) -> ExperimentReport:
    report = new_report(spec)
    if alphas:
        report.sweeps['alpha'] = sweep_alpha(spec, alphas, k, report.timings)
    if ks:
        report.sweeps['k'] = sweep_k(spec, ks, alpha, report.timings)
    if not report.sweeps:
        raise ConfigError("sweep needs alphas or ks")
    return report
