"""
adaptive.py

Adaptive adversaries. Strategy 1 repeats every query M times and averages the
probabilities, with the budget scaled to budget * M physical queries.
Strategy 2 multiplies the attack step parameter by a factor while the radius
stays fixed.
"""
# Standard Imports
import time
from dataclasses import replace
from typing import List

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.attacks.base import SCORE_ATTACKS
from cslb.errors import ConfigError
from cslb.harness.ExperimentReport import CellResult, ExperimentReport
from cslb.harness.ExperimentSpec import ExperimentSpec
from cslb.harness.grid import run_cells, new_report

AVERAGING_DEFENSES = ('rnd', 'snd', 'counter-sample')
STEPSIZE_ATTACKS = ('zo-signsgd', 'nes', 'simba')
STRATEGIES = ('averaging', 'stepsize', 'both')


def run_adaptive_averaging(spec: ExperimentSpec) -> List[CellResult]:
    defenses = [d for d in spec.defenses if d.kind in AVERAGING_DEFENSES]
    attacks = [a for a in spec.attacks if a.kind in SCORE_ATTACKS]
    if not defenses or not attacks:
        raise ConfigError(f"Query averaging needs a defense of kind {list(AVERAGING_DEFENSES)} "
                          f"and a score-based attack")
    skipped = [a.name for a in spec.attacks if a.kind not in SCORE_ATTACKS]
    if skipped:
        logger.warning(f"Query averaging skips decision-based attacks: {skipped}")

    cells = [(d, a, M) for M in spec.m_values for d in defenses for a in attacks]
    return run_cells(spec, cells, desc='averaging')


def run_adaptive_stepsize(spec: ExperimentSpec) -> List[CellResult]:
    attacks = [a for a in spec.attacks if a.kind in STEPSIZE_ATTACKS]
    if not attacks:
        raise ConfigError(f"Step-size scaling needs one of the attacks {list(STEPSIZE_ATTACKS)}")

    cells = [(d, replace(a, step_factor=factor), 1)
             for factor in spec.step_factors for d in spec.defenses for a in attacks]
    return run_cells(spec, cells, desc='stepsize')


def run_adaptive(spec: ExperimentSpec, strategy: str = 'both') -> ExperimentReport:
    if strategy not in STRATEGIES:
        raise ConfigError(f"Unknown strategy {strategy!r}; valid strategies: {list(STRATEGIES)}")
    report = new_report(spec)

    if strategy in ('averaging', 'both'):
        started = time.perf_counter()
        report.sections['adaptive_averaging'] = run_adaptive_averaging(spec)
        report.timings['adaptive_averaging'] = time.perf_counter() - started
    if strategy in ('stepsize', 'both'):
        started = time.perf_counter()
        report.sections['adaptive_stepsize'] = run_adaptive_stepsize(spec)
        report.timings['adaptive_stepsize'] = time.perf_counter() - started
    return report
