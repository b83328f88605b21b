"""
runner.py

Dispatch from an AttackConfig to its attack function.
"""
# Standard Imports
from typing import Sequence

# Third-Party Imports
import numpy as np

# Project-Specific Imports
from cslb.attacks.base import AttackConfig, AttackResult, ATTACK_KINDS
from cslb.attacks.hsj_lite import attack_hsj_lite
from cslb.attacks.nes import attack_nes, attack_zo_signsgd
from cslb.attacks.signhunter import attack_signhunter
from cslb.attacks.simba import attack_simba
from cslb.attacks.square import attack_square
from cslb.errors import ConfigError, InvalidInputError

ATTACKS = {
    'nes': attack_nes,
    'zo-signsgd': attack_zo_signsgd,
    'signhunter': attack_signhunter,
    'square': attack_square,
    'simba': attack_simba,
    'hsj-lite': attack_hsj_lite,
}


def run_attack(oracle, attack_cfg: AttackConfig, sample: np.ndarray, y_clean: int,
               nonce: Sequence[int] = ()) -> AttackResult:
    """
    Run one untargeted attack on `sample`; success is judged by a fresh
    defended query at sample + delta.
    """
    attack = ATTACKS.get(attack_cfg.kind)
    if attack is None:
        raise ConfigError(f"Unknown attack kind {attack_cfg.kind!r}; valid kinds: {list(ATTACK_KINDS)}")
    expected = 'decision' if attack_cfg.is_decision else 'score'
    if oracle.mode != expected:
        raise InvalidInputError(f"{attack_cfg.kind} needs a {expected}-mode oracle, got {oracle.mode}")
    return attack(oracle, sample, int(y_clean), attack_cfg, nonce)
