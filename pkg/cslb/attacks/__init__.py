from cslb.attacks.Oracle import Oracle, AveragedOracle, oracle_query, averaged_view
from cslb.attacks.base import AttackConfig, AttackResult, ATTACK_KINDS, SCORE_ATTACKS, attacker_loss
from cslb.attacks.nes import attack_nes, attack_zo_signsgd, estimate_gradient_nes, estimate_gradient_zo
from cslb.attacks.signhunter import attack_signhunter, sign_hunter_search
from cslb.attacks.square import attack_square
from cslb.attacks.simba import attack_simba
from cslb.attacks.hsj_lite import attack_hsj_lite, boundary_binary_search
from cslb.attacks.runner import run_attack
