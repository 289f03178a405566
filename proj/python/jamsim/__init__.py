"""Channel access under jamming: estimators and a lockstep simulator."""

import json as _json

from ._jamsim import (
    ConfigError,
    IoError,
    collision_prob,
    generator_probabilities,
    invert_n_given_j,
    invert_n_plus_j,
    j_from_fraction,
    jammer_invert_n,
    optimize_window,
    oracle_throughput,
    phase_lengths,
    rank_channels,
    selfcheck,
)
from . import _jamsim


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def normalize_config(config):
    return _json.loads(_jamsim.normalize_config(_text(config)))


def run_episode(config, seed):
    return _jamsim.run_episode(_text(config), seed)


def run_experiment(config, parallel=1, out_dir=""):
    return _jamsim.run_experiment(_text(config), parallel, str(out_dir))


__all__ = [
    "ConfigError",
    "IoError",
    "collision_prob",
    "generator_probabilities",
    "invert_n_given_j",
    "invert_n_plus_j",
    "j_from_fraction",
    "jammer_invert_n",
    "normalize_config",
    "optimize_window",
    "oracle_throughput",
    "phase_lengths",
    "rank_channels",
    "run_episode",
    "run_experiment",
    "selfcheck",
]
