"""
common.py

Flags and loaders shared by the command modules.
"""
# Standard Imports
import argparse
import os
from pathlib import Path

# Project-Specific Imports
from cslb.config import RunConfig, load_config, apply_overrides, PROFILES
from cslb.errors import ConfigError
from cslb.harness.ExperimentSpec import ExperimentSpec
from cslb.nn.Model import Model
from cslb.nn.weights import load_weights


def global_flags() -> argparse.ArgumentParser:
    """Parent parser with the flags every subcommand accepts."""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group('global options')
    group.add_argument('--config', help='JSON run configuration')
    group.add_argument('--threads', type=int, default=os.cpu_count() or 1,
                       help='worker threads for experiment cells (default: available cores)')
    group.add_argument('--seed', type=int, help='experiment seed (overrides CSLB_SEED and the config)')
    group.add_argument('--output', help='output directory (overrides output.dir)')
    group.add_argument('--verbose', action='store_true', help='log at INFO level')
    group.add_argument('--debug', action='store_true', help='log at DEBUG level')
    return parser


def experiment_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group('experiment options')
    group.add_argument('--n', type=int, help='evaluation samples')
    group.add_argument('--budget', type=int, help='attacker queries per sample')
    group.add_argument('--profile', choices=sorted(PROFILES), help='size profile')
    return parser


def run_config(args) -> RunConfig:
    if not args.config:
        raise ConfigError(f"{args.command} needs --config")
    config = load_config(args.config)
    return apply_overrides(config, seed=args.seed, n=getattr(args, 'n', None), budget=getattr(args, 'budget', None),
                           profile=getattr(args, 'profile', None), output=args.output)


def load_model(config: RunConfig) -> Model:
    path = config.weights_path
    if not Path(path).is_file():
        raise ConfigError(f"model.weights_path: no such file {path}")
    return load_weights(path)


def experiment_spec(config: RunConfig, args) -> ExperimentSpec:
    """Spec over the test split of the configured data."""
    model = load_model(config)
    _, test = config.data.load()
    experiment = config.experiment
    return ExperimentSpec(
        model=model,
        dataset=test,
        defenses=list(config.defenses),
        attacks=list(config.attacks),
        n=experiment.sample_count,
        budget=experiment.query_budget,
        m_values=list(experiment.m_values),
        step_factors=list(experiment.step_factors),
        seed=experiment.seed,
        clean_trials=experiment.clean_trials,
        threads=args.threads,
        output_dir=config.output.dir,
        model_path=config.weights_path,
    )
