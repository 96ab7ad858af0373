"""Tsallis-entropy online mirror descent for multi-armed bandits.

A simulation library and CLI around a bandit learner whose regularizer
interpolates between the log-barrier (alpha = 0) and negative entropy
(alpha = 1), with importance-weighted or reduced-variance loss estimates,
plus classic baselines, loss-generating environments, a dueling reduction,
and an experiment harness with CSV output.
"""

from .baselines import Exp3Policy, ThompsonPolicy, Ucb1Policy
from .bounds import (
    bound_thm1_adversarial,
    bound_thm1_self_bounding,
    bound_thm2_adversarial,
)
from .core import GapVector, RegretTrace, checkpoint_grid, sample_index
from .dueling import DuelSpec, duel, duel_left_wins, sparring_round
from .envs import (
    CorruptedSpec,
    StochasticSpec,
    SwitchingSpec,
    experiment1,
    gaps_of,
    make_env,
    multi_optimal,
)
from .estimators import iw_estimate, rv_estimate
from .harness import (
    AlgorithmConfig,
    ConfigError,
    ExperimentConfig,
    aggregate,
    load_config,
    parse_config,
    run_batch,
    run_single,
)
from .solvers import newton_weights_half, solve_weights_general
from .tsallis import (
    TsallisConfig,
    TsallisInfPolicy,
    TsallisState,
    init_state,
    learning_rate,
    select_arm,
    update,
)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig",
    "ConfigError",
    "CorruptedSpec",
    "DuelSpec",
    "Exp3Policy",
    "ExperimentConfig",
    "GapVector",
    "RegretTrace",
    "StochasticSpec",
    "SwitchingSpec",
    "ThompsonPolicy",
    "TsallisConfig",
    "TsallisInfPolicy",
    "TsallisState",
    "Ucb1Policy",
    "aggregate",
    "bound_thm1_adversarial",
    "bound_thm1_self_bounding",
    "bound_thm2_adversarial",
    "checkpoint_grid",
    "duel",
    "duel_left_wins",
    "experiment1",
    "gaps_of",
    "init_state",
    "iw_estimate",
    "learning_rate",
    "load_config",
    "make_env",
    "multi_optimal",
    "newton_weights_half",
    "parse_config",
    "run_batch",
    "run_single",
    "rv_estimate",
    "sample_index",
    "select_arm",
    "solve_weights_general",
    "sparring_round",
    "update",
    "__version__",
]
