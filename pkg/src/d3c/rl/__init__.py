"""Tabular/linear RL testbeds for the bandit mixing algorithm."""

from d3c.rl.coins import CoinsWorld, coins_observation, coins_reset, coins_step
from d3c.rl.learner import CoinsAdapter, ReinforceBanditLearner, RingAdapter, marl_learner
from d3c.rl.reinforce import (
    Episode,
    LinearSoftmaxPolicy,
    LinearValue,
    ReinforceConfig,
    reinforce_update,
)
from d3c.rl.ring import (
    RingOracle,
    RingWorld,
    observation,
    ring_optimal_return,
    ring_reset,
    ring_step,
)

__all__ = [
    "CoinsAdapter",
    "CoinsWorld",
    "Episode",
    "LinearSoftmaxPolicy",
    "LinearValue",
    "ReinforceBanditLearner",
    "ReinforceConfig",
    "RingAdapter",
    "RingOracle",
    "RingWorld",
    "coins_observation",
    "coins_reset",
    "coins_step",
    "marl_learner",
    "observation",
    "reinforce_update",
    "ring_optimal_return",
    "ring_reset",
    "ring_step",
]
