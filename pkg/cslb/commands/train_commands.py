# Project-Specific Imports
from cslb.app_logger import logger
from cslb.commands.common import global_flags, run_config
from cslb.nn.Model import build_model
from cslb.nn.trainer import train, evaluate_accuracy
from cslb.nn.weights import save_weights


def register(subparsers):
    parser = subparsers.add_parser('train', parents=[global_flags()],
                                   help='train the configured model and write its weights file')
    parser.set_defaults(handler=cmd_train)


def cmd_train(args) -> int:
    config = run_config(args)
    weights_path = config.weights_path
    train_set, test_set = config.data.load()
    logger.info(f"Training {config.model.arch} on {len(train_set)} samples")

    model = build_model(config.model.arch, train_set.sample_shape, train_set.num_classes,
                        seed=config.train.seed, hidden=config.model.hidden)
    model = train(model, train_set, config.train.epochs, config.train.learning_rate,
                  config.train.batch_size, config.train.seed)

    accuracy = evaluate_accuracy(model, test_set)
    save_weights(model, weights_path)
    print(f"test accuracy: {accuracy:.4f}")
    print(f"weights written to {weights_path}")
    return 0
