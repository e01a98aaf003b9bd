"""Price-of-anarchy estimators and experiment metrics.

The local utilitarian bound: for positive mixed losses and a user bound
mu_bar on the smoothness parameter,

    rho_i = 1 + dt * ReLU( (d/dt f_i^A) / f_i^A + ||grad_i f_i^A||^2 / (mu_bar f_i^A) )

and the game-level bound is max_i rho_i. The egalitarian variant replaces
the per-agent ratio with the max-loss ratio and pools the gradient norms.
The additive surrogate ReLU(rate + eps) drops the log and accepts negative
losses; it is the quantity agents actually descend.

This module never recomputes dynamics: loss rates and gradient norms arrive
in snapshots from the exact-gradient loop or from finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PoaConfig:
    """dt: step size; mu_bar: smoothness prior (may be +inf); epsilon: surrogate offset."""

    dt: float
    mu_bar: float = np.inf
    epsilon: float = 0.0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.mu_bar < 0:
            raise ValueError("mu_bar must be nonnegative")


@dataclass(frozen=True)
class LocalSnapshot:
    """Per-agent mixed losses, their time derivatives, and own-gradient norms squared."""

    mixed_losses: np.ndarray
    loss_rates: np.ndarray
    own_grad_sqnorms: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.mixed_losses).size
        if np.asarray(self.loss_rates).size != n or np.asarray(self.own_grad_sqnorms).size != n:
            raise ValueError("snapshot vectors must have equal length")


def _relu(z):
    return np.maximum(z, 0.0)


def local_poa_utilitarian(s: LocalSnapshot, cfg: PoaConfig) -> tuple[np.ndarray, float]:
    """Per-agent local utilitarian bounds and their max.

    Requires positive mixed losses; callers with losses in R should use
    rho_additive instead.
    """
    f = np.asarray(s.mixed_losses, dtype=float)
    if np.any(f <= 0.0):
        raise ValueError(
            "local utilitarian bound needs positive mixed losses; "
            "use rho_additive for losses in R"
        )
    rates = np.asarray(s.loss_rates, dtype=float)
    sq = np.asarray(s.own_grad_sqnorms, dtype=float)
    curvature = np.zeros_like(f) if np.isinf(cfg.mu_bar) else sq / (cfg.mu_bar * f)
    rho = 1.0 + cfg.dt * _relu(rates / f + curvature)
    return rho, float(rho.max())


def local_poa_egalitarian(s: LocalSnapshot, max_loss_rate: float, cfg: PoaConfig) -> float:
    """Bound on the max-loss (egalitarian) local price of anarchy."""
    f = np.asarray(s.mixed_losses, dtype=float)
    fmax = float(f.max())
    if fmax <= 0.0:
        raise ValueError("egalitarian bound needs a positive max loss")
    sq = float(np.asarray(s.own_grad_sqnorms, dtype=float).sum())
    curvature = 0.0 if np.isinf(cfg.mu_bar) else sq / (cfg.mu_bar * fmax)
    return 1.0 + cfg.dt * float(_relu(max_loss_rate / fmax + curvature))


def rho_additive(loss_rate: float, epsilon: float) -> float:
    """ReLU(rate + eps): the additive surrogate, valid for losses in R."""
    return float(max(loss_rate + epsilon, 0.0))


def global_poa_closed(game) -> float | None:
    """Worst-Nash total over optimal total, where the game has closed forms."""
    nash = getattr(game, "nash_total", None)
    opt = getattr(game, "opt_total", None)
    if nash is None or opt is None:
        return None
    return float(nash) / float(opt)


def ratio_to_optimal(total: float, opt_total: float) -> float:
    """Attained total loss over the cooperative optimum (>= 1 at best play).

    Sign convention for reward games: pass (opt_return, attained_return) in
    place of (total, opt_total), i.e. invert the ratio, so that 1 still
    means optimal and larger means worse.
    """
    return float(total) / float(opt_total)


def relative_attention(A: np.ndarray, i: int, j: int) -> float:
    """ln(A_ii / A_ij): positive while agent i weighs its own loss above j's.

    Entries are floored at 1e-12 so boundary rows (exact identity baselines)
    give a large finite value instead of a divide-by-zero.
    """
    if i == j:
        raise ValueError("attention ratio is defined against another agent")
    floor = 1e-12
    return float(np.log(max(A[i, i], floor) / max(A[i, j], floor)))


def mean_relative_attention(A: np.ndarray) -> np.ndarray:
    """Per-agent mean of ln(A_ii/A_ij) over j != i."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    out = np.empty(n)
    for i in range(n):
        others = [relative_attention(A, i, j) for j in range(n) if j != i]
        out[i] = float(np.mean(others))
    return out


def composition_ratio(A: np.ndarray, i: int, j: int) -> float:
    """A_ii / A_ji: own-loss vs agent j's loss weight inside agent i's mixed loss.

    Column i of A composes f_i^A; this is the ratio the inequity-aversion
    halting condition is stated in.
    """
    return float(A[i, i] / A[j, i])


def is_diag_dominant(M: np.ndarray) -> bool:
    """Strict row diagonal dominance with positive diagonal."""
    M = np.asarray(M, dtype=float)
    off = np.abs(M).sum(axis=1) - np.abs(np.diag(M))
    return bool(np.all(np.diag(M) > off))


def check_diag_dominance(hessians, A: np.ndarray) -> tuple[list[bool], bool]:
    """Dominance flags for each loss Hessian and for the row-mixed Jacobian
    J^A_ik = sum_j A_ij H^j_ik (scalar strategies: one coordinate per agent,
    so row i of the mixture blends row i of each Hessian with row i of A).

    When every input Hessian is dominant the mixture must be too; that
    implication is asserted.
    """
    hessians = [np.asarray(H, dtype=float) for H in hessians]
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if hessians[0].shape != (n, n) or len(hessians) != n:
        raise ValueError("expected n Hessians of shape (n, n): one scalar strategy per agent")
    J = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            J[i] += A[i, j] * hessians[j][i]
    flags = [is_diag_dominant(H) for H in hessians]
    mixed = is_diag_dominant(J)
    if all(flags):
        assert mixed, "dominant inputs must give a dominant mixture"
    return flags, mixed
