from cslb.nn.losses import LossKind, loss, softmax
from cslb.nn.Model import Model, build_model
from cslb.nn.trainer import train, evaluate_accuracy
from cslb.nn.weights import save_weights, load_weights
