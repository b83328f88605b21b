"""
Desk-scale acceptance runs on MNIST-format data.

Skipped unless CSLB_MNIST_DIR points at a directory holding the four IDX files
(gzipped or not). These runs take hours at the full budgets; the thresholds are
directional.
"""
# Standard Imports
import os
from dataclasses import replace
from pathlib import Path

# Third-Party Imports
import numpy as np
import pytest

# Project-Specific Imports
from cslb.attacks import AttackConfig, SCORE_ATTACKS
from cslb.data import load_idx_dataset
from cslb.defenses import DefenseConfig
from cslb.harness import ExperimentSpec, run_cells, clean_accuracy
from cslb.harness.adaptive import run_adaptive_averaging, run_adaptive_stepsize
from cslb.nn import build_model, train, evaluate_accuracy

MNIST_DIR = os.getenv('CSLB_MNIST_DIR')

pytestmark = [
    pytest.mark.acceptance,
    pytest.mark.skipif(not MNIST_DIR, reason='CSLB_MNIST_DIR is not set'),
]

EPSILON = 0.2
THREADS = os.cpu_count() or 1

NONE = DefenseConfig(kind='none')
SND = DefenseConfig(kind='snd', sigma=0.01)
RND = DefenseConfig(kind='rnd', eta=0.02)
CS_K10 = DefenseConfig(kind='counter-sample', k=10, alpha=0.1, sigma=0.01)
CS_K1 = replace(CS_K10, k=1)
CS_NO_STEP = replace(CS_K10, alpha=0.0)

SCORE = [AttackConfig(kind=kind, epsilon=EPSILON) for kind in SCORE_ATTACKS]
HSJ = AttackConfig(kind='hsj-lite', epsilon=EPSILON)


def _idx(stem: str) -> Path:
    for name in (f'{stem}.gz', stem):
        path = Path(MNIST_DIR) / name
        if path.is_file():
            return path
    pytest.skip(f'{stem} not found in {MNIST_DIR}')


@pytest.fixture(scope='module')
def mnist():
    train_set = load_idx_dataset(_idx('train-images-idx3-ubyte'), _idx('train-labels-idx1-ubyte'), name='train')
    test_set = load_idx_dataset(_idx('t10k-images-idx3-ubyte'), _idx('t10k-labels-idx1-ubyte'), name='test')
    return train_set, test_set


@pytest.fixture(scope='module')
def desk_cnn(mnist):
    train_set, _ = mnist
    model = build_model('desk-cnn', train_set.sample_shape, train_set.num_classes, seed=0)
    return train(model, train_set, epochs=10, learning_rate=0.05, batch_size=32, seed=0)


def _spec(model, dataset, defenses, attacks, n=100, budget=10_000, **kwargs) -> ExperimentSpec:
    return ExperimentSpec(model=model, dataset=dataset, defenses=defenses, attacks=attacks, n=n, budget=budget,
                          threads=THREADS, **kwargs)


@pytest.fixture(scope='module')
def score_grid(desk_cnn, mnist):
    """AFR per (defense name, attack name) for every defense the score-attack checks compare."""
    _, test_set = mnist
    defenses = [NONE, SND, RND, CS_K1, CS_K10, CS_NO_STEP]
    spec = _spec(desk_cnn, test_set, defenses, SCORE)
    cells = run_cells(spec, [(d, a, 1) for d in defenses for a in SCORE], desc='acceptance')
    assert all(cell.ok for cell in cells)
    return {(cell.defense, cell.attack): cell.afr for cell in cells}


def test_desk_model_quality(desk_cnn, mnist):
    _, test_set = mnist
    assert evaluate_accuracy(desk_cnn, test_set) >= 0.97


def test_undefended_model_is_vulnerable(score_grid):
    for attack in SCORE:
        assert score_grid[(NONE.name, attack.name)] <= 0.25, attack.name


def test_counter_sample_raises_failure_rate(score_grid):
    beats_snd = 0
    for attack in SCORE:
        defended = score_grid[(CS_K10.name, attack.name)]
        assert defended >= score_grid[(NONE.name, attack.name)] + 0.30, attack.name
        beats_snd += defended >= score_grid[(SND.name, attack.name)]
    assert beats_snd >= 4


def test_clean_accuracy_is_preserved(desk_cnn, mnist):
    _, test_set = mnist
    subset = test_set.take(np.arange(1000))
    plain = clean_accuracy(desk_cnn, NONE, subset)
    defended = clean_accuracy(desk_cnn, CS_K10, subset, trials=5)
    assert abs(plain - defended) <= 0.02


def test_iteration_count_barely_matters(score_grid):
    for attack in SCORE:
        assert abs(score_grid[(CS_K1.name, attack.name)] - score_grid[(CS_K10.name, attack.name)]) <= 0.15


def test_zero_step_matches_noise_defense(score_grid):
    for attack in SCORE:
        assert abs(score_grid[(CS_NO_STEP.name, attack.name)] - score_grid[(SND.name, attack.name)]) <= 0.05


def test_averaging_hurts_counter_sample_least(desk_cnn, mnist):
    _, test_set = mnist
    spec = _spec(desk_cnn, test_set, [SND, RND, CS_K10], SCORE, n=50, m_values=[1, 10])
    afr = {(c.defense, c.attack, c.M): c.afr for c in run_adaptive_averaging(spec)}

    def drop(defense, attack):
        return afr[(defense.name, attack.name, 1)] - afr[(defense.name, attack.name, 10)]

    holds = [drop(CS_K10, a) <= drop(SND, a) and drop(CS_K10, a) <= drop(RND, a) for a in SCORE]
    assert sum(holds) > len(holds) / 2


def test_step_scaling_against_simba(desk_cnn, mnist):
    _, test_set = mnist
    simba = AttackConfig(kind='simba', epsilon=EPSILON)
    spec = _spec(desk_cnn, test_set, [SND, RND, CS_K10], [simba], step_factors=[1.0, 2.0, 10.0])
    afr = {(c.defense, c.step_factor): c.afr for c in run_adaptive_stepsize(spec)}
    for factor in (1.0, 2.0, 10.0):
        assert afr[(CS_K10.name, factor)] >= afr[(SND.name, factor)]
        assert afr[(CS_K10.name, factor)] >= afr[(RND.name, factor)]


def test_decision_attack_is_slowed(desk_cnn, mnist):
    _, test_set = mnist
    spec = _spec(desk_cnn, test_set, [NONE, SND, CS_K10], [HSJ])
    undefended, noisy, defended = run_cells(spec, [(NONE, HSJ, 1), (SND, HSJ, 1), (CS_K10, HSJ, 1)], desc='hsj')
    assert undefended.afr < noisy.afr
    assert defended.afr >= undefended.afr + 0.2
