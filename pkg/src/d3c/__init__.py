"""Decentralized dynamic compromise.

Agents redistribute their losses over the group with simplex-constrained
mixing rows and descend a local, differentiable upper bound on the price of
anarchy — with exact gradients for analytic games and one-shot
sphere-perturbation estimates for bandit (RL) feedback.
"""

from d3c import bandit, config, exact, experiments, games, mixing, poa, records, rl, stats
from d3c.bandit import BanditConfig, run_bandit
from d3c.config import ExperimentConfig, emit_config, parse_config
from d3c.exact import ExactConfig, JointState, d3c_exact_step, grad_a_surrogate, run_exact
from d3c.experiments import preset, run_experiment
from d3c.mixing import (
    LogitBounds,
    Perturbation,
    identity_mixing,
    init_mixing,
    kl_anchor,
    kl_anchor_grad,
    mirror_step,
    mix_losses,
    mix_rewards,
    perturb_trial,
    sample_sphere,
    uniform_mixing,
)
from d3c.poa import (
    LocalSnapshot,
    PoaConfig,
    global_poa_closed,
    local_poa_egalitarian,
    local_poa_utilitarian,
    ratio_to_optimal,
    relative_attention,
    rho_additive,
)
from d3c.records import RunRecord

__all__ = [
    "BanditConfig",
    "ExactConfig",
    "ExperimentConfig",
    "JointState",
    "LocalSnapshot",
    "LogitBounds",
    "Perturbation",
    "PoaConfig",
    "RunRecord",
    "bandit",
    "config",
    "d3c_exact_step",
    "emit_config",
    "exact",
    "experiments",
    "games",
    "global_poa_closed",
    "grad_a_surrogate",
    "identity_mixing",
    "init_mixing",
    "kl_anchor",
    "kl_anchor_grad",
    "local_poa_egalitarian",
    "local_poa_utilitarian",
    "mirror_step",
    "mix_losses",
    "mix_rewards",
    "mixing",
    "parse_config",
    "perturb_trial",
    "poa",
    "preset",
    "ratio_to_optimal",
    "records",
    "relative_attention",
    "rho_additive",
    "rl",
    "run_bandit",
    "run_exact",
    "run_experiment",
    "sample_sphere",
    "stats",
    "uniform_mixing",
]
