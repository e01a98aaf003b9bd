"""REINFORCE learners satisfying the bandit-loop contract.

One learner step = one policy-gradient batch trained on mixed rewards:
every environment step broadcasts the raw reward vector, each agent's
training reward is the perturbed-row mixture r~ = A~^T r, and the learner
reports the batch-mean mixed return per agent (plus raw returns for
logging). Episodes in a batch run in lockstep so policy evaluations batch
across them.
"""

from __future__ import annotations

import numpy as np

from d3c.bandit import BanditLearner
from d3c.rl.coins import (
    EPISODE_LEN as COINS_LEN,
    N_ACTIONS as COINS_ACTIONS,
    coins_observation,
    coins_reset,
    coins_step,
)
from d3c.rl.reinforce import (
    Episode,
    LinearSoftmaxPolicy,
    LinearValue,
    ReinforceConfig,
    reinforce_update,
)
from d3c.rl.ring import EPISODE_LEN as RING_LEN, observation, ring_reset, ring_step


class RingAdapter:
    """Trust-Your-Brother batch: alternate which prey starts cornered."""

    n_agents = 2
    n_actions = 3
    obs_dim = 2
    episode_len = RING_LEN

    def start_episode(self, episode_idx: int, rng: np.random.Generator):
        self.world = ring_reset(episode_idx % 2, rng)
        return self._obs()

    def _obs(self):
        feats = observation(self.world)
        return np.stack([feats, feats])

    def step(self, actions, rng):
        self.world, rewards = ring_step(self.world, tuple(actions), rng)
        return self._obs(), rewards


class CoinsAdapter:
    n_agents = 2
    n_actions = COINS_ACTIONS
    obs_dim = 100
    episode_len = COINS_LEN

    def start_episode(self, episode_idx: int, rng: np.random.Generator):
        self.world = coins_reset(rng)
        return self._obs()

    def _obs(self):
        return np.stack([coins_observation(self.world, k) for k in range(2)])

    def step(self, actions, rng):
        self.world, rewards = coins_step(self.world, tuple(actions), rng)
        return self._obs(), rewards


class ReinforceBanditLearner(BanditLearner):
    """Policy-gradient learner over a fixed-length episodic environment.

    One step() = one episode, per the bandit contract (mixing trials are
    measured in episodes). Policies only change every batch_size episodes,
    so batches are pre-generated in lockstep for speed; raw rewards are
    stored and mixed with the perturbed rows in force when each episode is
    served, which matches sequential play exactly (actions never depend on
    the mixing within a frozen-policy batch).
    """

    def __init__(self, adapter_factory, cfg: ReinforceConfig, rng: np.random.Generator):
        probe = adapter_factory()
        self.adapter_factory = adapter_factory
        self.n = probe.n_agents
        self.cfg = cfg
        self.rng = rng
        self.policies = [
            LinearSoftmaxPolicy.zeros(probe.n_actions, probe.obs_dim) for _ in range(self.n)
        ]
        self.values = [LinearValue.zeros(probe.obs_dim) for _ in range(self.n)]
        self._pending: list[dict] = []  # generated, not yet served
        self._train: list[list[Episode]] = [[] for _ in range(self.n)]

    def _sample_actions(self, policy, obs_batch):
        probs = policy.probs_batch(obs_batch)
        u = self.rng.random((obs_batch.shape[0], 1))
        return (u > np.cumsum(probs, axis=1)).sum(axis=1)

    def _generate_batch(self):
        batch = self.cfg.batch_size
        envs = [self.adapter_factory() for _ in range(batch)]
        obs = np.stack([env.start_episode(e, self.rng) for e, env in enumerate(envs)])
        records = [{"obs": [], "actions": [], "raw": []} for _ in range(batch)]
        for _ in range(envs[0].episode_len):
            actions = np.stack(
                [self._sample_actions(self.policies[k], obs[:, k, :]) for k in range(self.n)],
                axis=1,
            )
            new_obs = np.empty_like(obs)
            for e, env in enumerate(envs):
                nxt, raw = env.step(actions[e], self.rng)
                records[e]["obs"].append(obs[e].copy())
                records[e]["actions"].append(actions[e].copy())
                records[e]["raw"].append(np.asarray(raw, dtype=float))
                new_obs[e] = nxt
            obs = new_obs
        self._pending = records

    def step(self, perturbed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if not self._pending:
            self._generate_batch()
        record = self._pending.pop(0)
        raw_total = np.zeros(self.n)
        mixed_total = np.zeros(self.n)
        per_agent = [Episode() for _ in range(self.n)]
        for obs, actions, raw in zip(record["obs"], record["actions"], record["raw"]):
            mixed = perturbed.T @ raw
            raw_total += raw
            mixed_total += mixed
            for k in range(self.n):
                per_agent[k].observations.append(obs[k])
                per_agent[k].actions.append(int(actions[k]))
                per_agent[k].rewards.append(float(mixed[k]))
        for k in range(self.n):
            self._train[k].append(per_agent[k])
        if len(self._train[0]) >= self.cfg.batch_size:
            for k in range(self.n):
                self.policies[k], self.values[k] = reinforce_update(
                    self.policies[k], self.values[k], self._train[k], self.cfg
                )
            self._train = [[] for _ in range(self.n)]
        return mixed_total, raw_total


def marl_learner(
    env_kind: str, cfg: ReinforceConfig, rng: np.random.Generator
) -> ReinforceBanditLearner:
    """Learner factory: 'ring' (Trust-Your-Brother) or 'coins'."""
    factories = {"ring": RingAdapter, "coins": CoinsAdapter}
    if env_kind not in factories:
        raise ValueError(f"unknown environment kind {env_kind!r}")
    return ReinforceBanditLearner(factories[env_kind], cfg, rng)
