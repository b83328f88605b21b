from cslb.defenses.DefenseConfig import DefenseConfig, DEFENSE_KINDS
from cslb.defenses.baselines import snd, rnd, bit_squeeze, avg_smooth
from cslb.defenses.counter_sample import counter_sample, CounterSampleTrace
from cslb.defenses.preprocess import preprocess, defended_forward
