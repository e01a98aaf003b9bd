"""Batch REINFORCE with a linear value baseline.

Policies are linear softmax over observation features (no bias). Updates
use full Monte-Carlo returns (discount 1) minus a linear value baseline;
the baseline itself trains by TD(0). Both learning rates default to 0.1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ReinforceConfig:
    policy_lr: float = 0.1
    value_lr: float = 0.1
    batch_size: int = 10
    gamma: float = 1.0


@dataclass
class LinearSoftmaxPolicy:
    """logits = weights @ features; weights has shape (n_actions, n_features)."""

    weights: np.ndarray

    @classmethod
    def zeros(cls, n_actions: int, n_features: int) -> "LinearSoftmaxPolicy":
        return cls(weights=np.zeros((n_actions, n_features)))

    def probs(self, obs: np.ndarray) -> np.ndarray:
        z = self.weights @ np.asarray(obs, dtype=float)
        z = z - z.max()
        e = np.exp(z)
        return e / e.sum()

    def probs_batch(self, obs: np.ndarray) -> np.ndarray:
        """Row-wise action distributions for a stack of observations."""
        z = np.asarray(obs, dtype=float) @ self.weights.T
        z = z - z.max(axis=1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=1, keepdims=True)

    def act(self, obs: np.ndarray, rng: np.random.Generator) -> int:
        return int(rng.choice(self.weights.shape[0], p=self.probs(obs)))

    def log_prob_grad(self, obs: np.ndarray, action: int) -> np.ndarray:
        """d log pi(a|obs) / d weights = (e_a - pi) obs^T."""
        p = self.probs(obs)
        sign = -p
        sign[action] += 1.0
        return np.outer(sign, obs)


@dataclass
class LinearValue:
    weights: np.ndarray

    @classmethod
    def zeros(cls, n_features: int) -> "LinearValue":
        return cls(weights=np.zeros(n_features))

    def value(self, obs: np.ndarray) -> float:
        return float(self.weights @ np.asarray(obs, dtype=float))


@dataclass
class Episode:
    """One agent's view of one episode."""

    observations: list = field(default_factory=list)
    actions: list = field(default_factory=list)
    rewards: list = field(default_factory=list)

    def returns(self, gamma: float) -> np.ndarray:
        g, out = 0.0, []
        for r in reversed(self.rewards):
            g = r + gamma * g
            out.append(g)
        return np.array(out[::-1])


def policy_gradient(
    policy: LinearSoftmaxPolicy, value: LinearValue, episodes: list[Episode], gamma: float
) -> np.ndarray:
    """Mean score-function gradient of the return over a batch of episodes.

    Vectorized over all transitions: sum_t (e_{a_t} - pi_t) adv_t phi_t^T.
    """
    if not episodes:
        return np.zeros_like(policy.weights)
    obs = np.asarray([o for ep in episodes for o in ep.observations], dtype=float)
    actions = np.asarray([a for ep in episodes for a in ep.actions], dtype=int)
    returns = np.concatenate([ep.returns(gamma) for ep in episodes])
    adv = returns - obs @ value.weights
    probs = policy.probs_batch(obs)
    score = -probs
    score[np.arange(actions.size), actions] += 1.0
    return (score * adv[:, None]).T @ obs / len(episodes)


def td0_update(value: LinearValue, episodes: list[Episode], gamma: float, lr: float) -> LinearValue:
    """TD(0) on the batch: one step of the mean semi-gradient, terminal value 0.

    Averaging over the batch keeps the update stable for unnormalized
    features (a per-transition sweep at the same rate diverges once
    lr * ||features||^2 exceeds 2).
    """
    w = value.weights
    grads, count = np.zeros_like(w), 0
    for ep in episodes:
        obs = np.asarray(ep.observations, dtype=float)
        values = obs @ w
        v_next = np.append(values[1:], 0.0)  # terminal value 0
        delta = np.asarray(ep.rewards, dtype=float) + gamma * v_next - values
        grads += delta @ obs
        count += len(ep.rewards)
    return LinearValue(weights=w + lr * grads / max(count, 1))


def reinforce_update(
    policy: LinearSoftmaxPolicy,
    value: LinearValue,
    episodes: list[Episode],
    cfg: ReinforceConfig,
) -> tuple[LinearSoftmaxPolicy, LinearValue]:
    """Ascend the batch policy gradient; refresh the baseline by TD(0).

    The advantage uses the pre-update value function, so a zero-advantage
    batch leaves the policy untouched.
    """
    grad = policy_gradient(policy, value, episodes, cfg.gamma)
    new_policy = LinearSoftmaxPolicy(weights=policy.weights + cfg.policy_lr * grad)
    new_value = td0_update(value, episodes, cfg.gamma, cfg.value_lr)
    return new_policy, new_value
