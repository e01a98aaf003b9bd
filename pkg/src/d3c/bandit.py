"""Zeroth-order mixing updates from bandit feedback.

Each agent commits to a sphere perturbation of its mixing row for a random
number of learning iterations (a trial), tracks the mean return over the
trial, and — only if returns got worse than the previous trial's baseline —
steps its row opposite the perturbation, scaled by the one-shot estimate
rho = ReLU((G_b - G)/tau + eps). Trials are per-agent and unsynchronized;
the only cross-agent coupling is the per-step reward broadcast inside the
learner.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from d3c.mixing import LogitBounds, init_mixing, mirror_step, perturb_trial
from d3c.poa import mean_relative_attention
from d3c.records import RecordBuilder, RunRecord


@dataclass(frozen=True)
class BanditConfig:
    """Algorithm hyperparameters: mixing step, perturbation scale, KL weight,
    trial-length bounds, initial self-weight, rate offset, logit clipping."""

    eta_a: float = 1.0
    delta: float = 1.0
    nu: float = 0.0
    tau_min: int = 10
    tau_max: int = 20
    a0: float = 0.99
    epsilon: float = 0.0
    bounds: LogitBounds = field(default_factory=LogitBounds)

    def __post_init__(self):
        if not (1 <= self.tau_min <= self.tau_max):
            raise ValueError("need 1 <= tau_min <= tau_max")
        if self.delta <= 0:
            raise ValueError("delta must be positive")


@dataclass(frozen=True)
class TrialState:
    """One committed mixing trial: the perturbed row in play, the direction
    it came from, its length, and the (step, mean-return) baseline."""

    perturbed_row: np.ndarray
    direction: np.ndarray
    tau: int
    t_begin: int
    g_begin: float


@dataclass(frozen=True)
class BanditAgentState:
    owner: int
    row: np.ndarray
    trial: TrialState
    g_mean: float
    last_rho: float = 0.0


def start_trial(
    row: np.ndarray, cfg: BanditConfig, step: int, g_mean: float, rng: np.random.Generator
) -> TrialState:
    """Draw a fresh perturbation and trial length; baseline is the mean
    return handed in (the previous trial's final G, per the pseudocode)."""
    perturbed, pert = perturb_trial(row, cfg.delta, rng)
    tau = int(rng.integers(cfg.tau_min, cfg.tau_max + 1))
    return TrialState(
        perturbed_row=perturbed,
        direction=pert.direction,
        tau=tau,
        t_begin=step,
        g_begin=float(g_mean),
    )


def init_agent(owner: int, n: int, cfg: BanditConfig, rng: np.random.Generator) -> BanditAgentState:
    row = init_mixing(n, cfg.a0)[owner]
    trial = start_trial(row, cfg, step=0, g_mean=0.0, rng=rng)
    return BanditAgentState(owner=owner, row=row, trial=trial, g_mean=0.0)


def record_return(state: BanditAgentState, g: float, step: int) -> BanditAgentState:
    """Fold one return into the running mean since the trial began:
    G = (G * (dt_b - 1) + g) / dt_b with dt_b = step - t_begin."""
    dt_b = step - state.trial.t_begin
    if dt_b < 1:
        raise ValueError("step precedes the trial start")
    g_mean = (state.g_mean * (dt_b - 1) + float(g)) / dt_b
    return replace(state, g_mean=g_mean)


def finish_trial(
    state: BanditAgentState, cfg: BanditConfig, step: int, rng: np.random.Generator
) -> BanditAgentState:
    """Score the trial, step the row (suffer-shift only), draw the next one."""
    trial = state.trial
    assert step - trial.t_begin == trial.tau, "trial finished at the wrong step"
    rho = max((trial.g_begin - state.g_mean) / trial.tau + cfg.epsilon, 0.0)
    row = state.row
    if rho > 0.0 or cfg.nu > 0.0:
        grad = rho * trial.direction
        if cfg.nu > 0.0:
            anchor = np.zeros_like(row)
            anchor[state.owner] = 1.0 / max(row[state.owner], 1e-12)
            grad = grad - cfg.nu * anchor
        row = mirror_step(row, grad, cfg.eta_a, cfg.bounds)
    new_trial = start_trial(row, cfg, step=step, g_mean=state.g_mean, rng=rng)
    return BanditAgentState(
        owner=state.owner, row=row, trial=new_trial, g_mean=state.g_mean, last_rho=rho
    )


class BanditLearner:
    """Learning-algorithm contract for the bandit loop.

    step() runs one learning iteration (e.g. a policy-gradient batch) using
    the CURRENT perturbed rows of all agents to mix the broadcast rewards,
    and returns (mixed mean returns, raw mean returns), one entry per agent.
    """

    n: int

    def step(self, perturbed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError


def perturbed_matrix(agents: list[BanditAgentState]) -> np.ndarray:
    return np.stack([a.trial.perturbed_row for a in agents])


def run_bandit(
    agents: list[BanditAgentState],
    learner: BanditLearner,
    cfg: BanditConfig,
    iterations: int,
    rng: np.random.Generator,
    run_id: int = 0,
    log_every: int = 1,
) -> RunRecord:
    """Drive the learner for `iterations` steps with per-agent async trials.

    Deterministic given the generator: agent k's trial randomness comes from
    the k-th spawned child stream.
    """
    n = len(agents)
    agent_rngs = rng.spawn(n)
    builder = RecordBuilder(run_id=run_id, n_agents=n)

    def log(step, raw, mixed):
        A = np.stack([a.row for a in agents])
        builder.log(
            step,
            raw,
            mixed,
            np.array([a.last_rho for a in agents]),
            np.nan,
            np.nan,
            mean_relative_attention(A),
            A,
        )

    for t in range(1, iterations + 1):
        mixed, raw = learner.step(perturbed_matrix(agents))
        for k in range(n):
            agents[k] = record_return(agents[k], mixed[k], t)
            if t - agents[k].trial.t_begin == agents[k].trial.tau:
                agents[k] = finish_trial(agents[k], cfg, t, agent_rngs[k])
        if t % log_every == 0 or t == iterations:
            log(t, raw, mixed)
    return builder.build(final_A=np.stack([a.row for a in agents]))
