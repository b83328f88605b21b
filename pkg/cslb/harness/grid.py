"""
grid.py

Cell runner and the defenses x attacks grid. A cell filters the evaluation
samples to those the defended model classifies correctly, attacks each of them
through its own oracle and aggregates the AFR. Failures are recorded per cell
and the grid continues.

Every random stream is keyed on (experiment seed, cell seed, sample index),
where the cell seed is a checksum of the cell's behaviour, so results do not
depend on scheduling or on which experiment the cell belongs to.
"""
# Standard Imports
import json
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence, Tuple

# Third-Party Imports
from tqdm import tqdm

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.attacks.Oracle import Oracle, CHECK_STREAM, averaged_view
from cslb.attacks.base import AttackConfig
from cslb.attacks.runner import run_attack
from cslb.data.Dataset import Dataset
from cslb.defenses.DefenseConfig import DefenseConfig
from cslb.defenses.preprocess import defended_forward
from cslb.harness.ExperimentReport import CellResult, ExperimentReport
from cslb.harness.ExperimentSpec import ExperimentSpec
from cslb.harness.metrics import afr, query_stats, clean_accuracy
from cslb.nn.Model import Model

Cell = Tuple[DefenseConfig, AttackConfig, int]


def cell_seed(defense: DefenseConfig, attack: AttackConfig, M: int = 1) -> int:
    """Stable 32-bit identity of a cell; behaviourally equal defenses share it."""
    attack_key = attack.to_dict()
    attack_key.pop('label')
    key = json.dumps({'defense': defense.canonical().to_dict(), 'attack': attack_key, 'M': int(M)}, sort_keys=True)
    return zlib.crc32(key.encode('utf-8'))


def defended_correct(model: Model, defense: DefenseConfig, samples: Dataset, seed: int) -> List[bool]:
    """Pre-attack correctness under the defense, one query per sample on the reserved check stream."""
    mask = []
    for index in range(len(samples)):
        _, label = defended_forward(model, samples.images[index], defense, (seed, CHECK_STREAM, index))
        mask.append(bool(label == samples.labels[index]))
    return mask


def undefended_correct(model: Model, samples: Dataset) -> List[bool]:
    if len(samples) == 0:
        return []
    return [bool(v) for v in model.predict(samples.images) == samples.labels]


class CellRunner:
    """
    Runs cells for one spec, caching the per-defense correctness masks.

    Inputs
    ------
    spec: ExperimentSpec
    executor: ThreadPoolExecutor
        Shared pool; sample results are collected in sample order.
    """

    def __init__(self, spec: ExperimentSpec, executor: ThreadPoolExecutor):
        self.spec = spec
        self.executor = executor
        self._masks: Dict[str, List[bool]] = {}
        self._undefended = undefended_correct(spec.model, spec.samples)

    def mask(self, defense: DefenseConfig) -> List[bool]:
        key = json.dumps(defense.canonical().to_dict(), sort_keys=True)
        if key not in self._masks:
            self._masks[key] = defended_correct(self.spec.model, defense, self.spec.samples, self.spec.seed)
        return self._masks[key]

    def _attack_sample(self, defense: DefenseConfig, attack: AttackConfig, M: int, seed: int, index: int):
        spec = self.spec
        x = spec.samples.images[index]
        y = int(spec.samples.labels[index])
        mode = 'decision' if attack.is_decision else 'score'
        oracle = Oracle(spec.model, defense, budget=spec.budget * M, mode=mode,
                        nonce_prefix=(spec.seed, seed, index), x0=x, epsilon=attack.epsilon)
        result = run_attack(averaged_view(oracle, M), attack, x, y, nonce=(spec.seed, seed, index))
        return result.to_dict()

    def run(self, defense: DefenseConfig, attack: AttackConfig, M: int = 1) -> CellResult:
        seed = cell_seed(defense, attack, M)
        mask = self.mask(defense)
        base = dict(defense=defense.name, attack=attack.name, M=int(M), step_factor=float(attack.step_factor),
                    defended_correct=list(mask), undefended_correct=list(self._undefended),
                    defense_config=defense.to_dict(), attack_config=attack.to_dict())

        try:
            correct = [i for i, ok in enumerate(mask) if ok]
            attacked = self.executor.map(lambda i: self._attack_sample(defense, attack, M, seed, i), correct)
            by_index = dict(zip(correct, attacked))
            results = [by_index.get(i) for i in range(len(mask))]
            rate = afr(results, mask)
            mean_q, median_q = query_stats(results, mask)
        except Exception as e:
            logger.error(f"Cell {defense.name} x {attack.name} (M={M}, step_factor={attack.step_factor:g}) "
                         f"failed: {e}", exc_info=True)
            return CellResult(afr=None, mean_queries=None, median_queries=None, n=sum(mask),
                              results=[None] * len(mask), error=f"{type(e).__name__}: {e}", **base)

        logger.info(f"Cell {defense.name} x {attack.name} (M={M}, step_factor={attack.step_factor:g}): "
                    f"AFR {rate:.3f} over {len(correct)} samples")
        return CellResult(afr=rate, mean_queries=mean_q, median_queries=median_q, n=len(correct),
                          results=results, **base)


def run_cells(spec: ExperimentSpec, cells: Sequence[Cell], desc: str = 'cells') -> List[CellResult]:
    """Run `cells` in order with `spec.threads` workers."""
    with ThreadPoolExecutor(max_workers=spec.threads) as executor:
        runner = CellRunner(spec, executor)
        return [runner.run(defense, attack, M) for defense, attack, M in tqdm(cells, desc=desc, unit='cell',
                                                                              disable=None)]


def with_no_defense(defenses: Sequence[DefenseConfig]) -> List[DefenseConfig]:
    """The defense list with the undefended row first."""
    defenses = list(defenses)
    if not any(d.kind == 'none' for d in defenses):
        defenses.insert(0, DefenseConfig(kind='none'))
    return defenses


def clean_accuracies(spec: ExperimentSpec, defenses: Sequence[DefenseConfig]) -> Dict[str, float]:
    return {d.name: clean_accuracy(spec.model, d, spec.samples, spec.clean_trials, spec.seed) for d in defenses}


def new_report(spec: ExperimentSpec) -> ExperimentReport:
    return ExperimentReport(metadata=spec.metadata())


def run_grid(spec: ExperimentSpec) -> ExperimentReport:
    """Every defense (plus the undefended row) against every attack at M = 1."""
    started = time.perf_counter()
    defenses = with_no_defense(spec.defenses)
    report = new_report(spec)
    report.clean_accuracy = clean_accuracies(spec, defenses)
    report.sections['grid'] = run_cells(spec, [(d, a, 1) for d in defenses for a in spec.attacks], desc='grid')
    report.timings['grid'] = time.perf_counter() - started
    return report


def all_failed(cells: Sequence[CellResult]) -> bool:
    return bool(cells) and not any(cell.ok for cell in cells)

