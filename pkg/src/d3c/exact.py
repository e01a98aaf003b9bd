"""Gradient-feedback learning: simultaneous descent and exact-gradient D3C.

Strategies follow simultaneous gradient descent on the mixed losses,
xdot_k = -grad_{x_k} f_k^A(x). Each agent i also owns mixing row A_i and
descends the additive surrogate ReLU(d/dt f_i^A + eps) plus a KL anchor.

The surrogate's gradient over row i has two channels. A_im enters the rate
of f_i^A (1) through the mixed loss itself when m = i (f_i^A carries A_ii)
and (2) through agent m's flow, since A_im weights f_i inside f_m^A:

    d(rate_i)/dA_im = [m == i] * (d f_i/dt)  -  <grad_{x_m} f_i^A, grad_{x_m} f_i>

with d f_i/dt the rate of the *original* loss i under the flow. The
formula is validated against central finite differences before use (see
tests); frozen agents drop out of both channels via the `active` mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from d3c.mixing import LogitBounds, kl_anchor_grad, mirror_step
from d3c.poa import LocalSnapshot, PoaConfig, local_poa_utilitarian, mean_relative_attention
from d3c.records import RecordBuilder, RunRecord


@dataclass(frozen=True)
class ExactConfig:
    """Strategy step dt, mixing step eta_a, KL weight nu, surrogate offset
    epsilon, iteration budget, and logit clipping bounds."""

    dt: float
    eta_a: float = 0.0
    nu: float = 0.0
    epsilon: float = 0.0
    steps: int = 1000
    bounds: LogitBounds = field(default_factory=LogitBounds)
    log_every: int = 1
    mu_bar: float = np.inf

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.eta_a < 0 or self.nu < 0:
            raise ValueError("eta_a and nu must be nonnegative")


@dataclass
class JointState:
    """Augmented strategy state (x, A) plus a step counter."""

    params: np.ndarray
    A: np.ndarray
    step: int = 0


def _active_mask(game, active) -> np.ndarray:
    if active is None:
        return np.ones(game.n, dtype=bool)
    active = np.asarray(active, dtype=bool)
    if active.size != game.n:
        raise ValueError("active mask must have one flag per agent")
    return active


def mixed_grad_table(game, x, A) -> np.ndarray:
    """(n, dim) table; row i is grad_x f_i^A = sum_j A_ji grad_x f_j."""
    return np.asarray(A, dtype=float).T @ game.loss_grads(x)


def mixed_grads(game, x, A) -> list[np.ndarray]:
    """Per-player own blocks grad_{x_i} f_i^A."""
    table = mixed_grad_table(game, x, A)
    return [table[i, game.block(i)].copy() for i in range(game.n)]


def flow(game, x, A, active=None, table=None) -> np.ndarray:
    """Stacked simultaneous-descent velocities xdot_k = -grad_{x_k} f_k^A."""
    mask = _active_mask(game, active)
    if table is None:
        table = mixed_grad_table(game, x, A)
    xdot = np.zeros(game.dim)
    for k in range(game.n):
        if mask[k]:
            xdot[game.block(k)] = -table[k, game.block(k)]
    return xdot


def strategy_step(game, x, A, dt, active=None) -> np.ndarray:
    """One explicit Euler step of the simultaneous descent, then clip."""
    return game.clip_strategies(x + dt * flow(game, x, A, active))


def ddt_mixed_loss(game, x, A, i, active=None) -> float:
    """d/dt f_i^A under the simultaneous-descent flow."""
    table = mixed_grad_table(game, x, A)
    return float(table[i] @ flow(game, x, A, active, table=table))


def grad_a_surrogate(game, x, A, i, epsilon, active=None) -> np.ndarray:
    """Gradient of ReLU(d/dt f_i^A + eps) over row A_i (two channels).

    Returns the zero vector on the inactive branch (rate + eps <= 0),
    matching improve-stay: while the mixed loss falls, keep the weights.
    """
    mask = _active_mask(game, active)
    grads = game.loss_grads(x)
    table = np.asarray(A, dtype=float).T @ grads
    xdot = flow(game, x, A, active, table=table)
    rate = float(table[i] @ xdot)
    if rate + epsilon <= 0.0:
        return np.zeros(game.n)
    own_rate = float(grads[i] @ xdot)  # d f_i / dt under the same flow
    out = np.zeros(game.n)
    for m in range(game.n):
        if mask[m]:
            blk = game.block(m)
            out[m] = -float(table[i, blk] @ grads[i, blk])
    out[i] += own_rate
    return out


def d3c_exact_step(game, state: JointState, cfg: ExactConfig, active=None) -> JointState:
    """Simultaneous update of every x_i and A_i from the pre-step state."""
    mask = _active_mask(game, active)
    x, A = state.params, state.A
    new_x = strategy_step(game, x, A, cfg.dt, active)
    new_A = A.copy()
    if cfg.eta_a > 0.0:
        for i in range(game.n):
            if not mask[i]:
                continue
            g = grad_a_surrogate(game, x, A, i, cfg.epsilon, active)
            if cfg.nu > 0.0:
                g = g + cfg.nu * kl_anchor_grad(A[i], i)
            if np.any(g != 0.0):
                new_A[i] = mirror_step(A[i], g, cfg.eta_a, cfg.bounds)
    return JointState(params=new_x, A=new_A, step=state.step + 1)


def mixed_jacobian(game, x, A) -> np.ndarray:
    """Jacobian of the mixed simultaneous-gradient field F_i = grad_{x_i} f_i^A.

    Block row i is sum_j A_ji H^j restricted to agent i's coordinates; the
    zero-sum structure of a game survives mixing as an antisymmetric part.
    """
    H = game.loss_hessians(x)
    J = np.zeros((game.dim, game.dim))
    for i in range(game.n):
        blk = game.block(i)
        mix = np.tensordot(np.asarray(A, dtype=float)[:, i], H, axes=(0, 0))
        J[blk, :] = mix[blk, :]
    return J


def _snapshot(game, x, A, active) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(mixed losses, rates, own-grad sqnorms) at the current state."""
    table = mixed_grad_table(game, x, A)
    xdot = flow(game, x, A, active, table=table)
    mixed = (np.asarray(A, dtype=float).T @ game.losses(x)).astype(float)
    rates = table @ xdot
    sqnorms = np.array([float(table[i, game.block(i)] @ table[i, game.block(i)]) for i in range(game.n)])
    return mixed, rates, sqnorms


def run_exact(
    game,
    cfg: ExactConfig,
    init_strategy_sampler,
    seed: int,
    A0: np.ndarray | None = None,
    active=None,
    run_id: int = 0,
) -> RunRecord:
    """Seeded, deterministic trajectory of a (possibly mixing) descent run.

    A0 defaults to exact identity rows, which with eta_a = 0 is the plain
    simultaneous-gradient baseline.
    """
    rng = np.random.default_rng(seed)
    mask = _active_mask(game, active)
    x = np.asarray(init_strategy_sampler(rng), dtype=float)
    A = np.eye(game.n) if A0 is None else np.array(A0, dtype=float)
    state = JointState(params=x, A=A, step=0)
    builder = RecordBuilder(run_id=run_id, n_agents=game.n)
    poa_cfg = PoaConfig(dt=cfg.dt, mu_bar=cfg.mu_bar)

    def log_state(st: JointState):
        raw = game.losses(st.params)
        mixed, rates, _sq = _snapshot(game, st.params, st.A, mask)
        rho = np.maximum(rates + cfg.epsilon, 0.0)
        if np.all(mixed > 0.0):
            snap = LocalSnapshot(mixed, rates, _sq)
            _, rho_max = local_poa_utilitarian(snap, poa_cfg)
        else:
            rho_max = np.nan
        ratio = np.nan if game.opt_total is None else float(raw.sum()) / game.opt_total
        builder.log(
            st.step, raw, mixed, rho, rho_max, ratio, mean_relative_attention(st.A), st.A
        )

    for _ in range(cfg.steps):
        if state.step % cfg.log_every == 0:
            log_state(state)
        state = d3c_exact_step(game, state, cfg, mask)
    log_state(state)
    return builder.build(final_params=state.params, final_A=state.A)
