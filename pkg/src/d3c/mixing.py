"""Simplex-constrained loss mixing.

Each agent owns one row of a right-stochastic matrix A. Transformed losses
are f^A = A^T f (agent i's mixed loss is weighted by *column* i), which
conserves the total loss for any row-stochastic A. Rows are updated by
entropic mirror descent with optional logit clipping, and explored by
committed perturbations drawn uniformly from the unit sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Floor applied before taking logs of row entries; rows are mathematically
# interior after softmax but accumulated round-off can underflow.
WEIGHT_FLOOR = 1e-12

SIMPLEX_ATOL = 1e-9


@dataclass(frozen=True)
class LogitBounds:
    """Clipping window for mixing-row logits."""

    lo: float = -5.0
    hi: float = 5.0

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"logit bounds require lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Perturbation:
    """A committed random direction on the unit sphere with its scale."""

    direction: np.ndarray
    scale: float


def validate_row(row: np.ndarray, interior: bool = True) -> None:
    """Raise if `row` is not a probability vector (optionally interior)."""
    row = np.asarray(row, dtype=float)
    if row.ndim != 1:
        raise ValueError("mixing row must be one-dimensional")
    if abs(row.sum() - 1.0) > SIMPLEX_ATOL:
        raise ValueError(f"mixing row must sum to 1, got {row.sum()!r}")
    if interior:
        if np.any(row <= 0.0):
            raise ValueError("mixing row must be strictly interior to the simplex")
    elif np.any(row < 0.0):
        raise ValueError("mixing row has negative entries")


def init_mixing(n: int, a0: float) -> np.ndarray:
    """Self-weighted initial mixing matrix: A_ii = a0, A_ij = (1-a0)/(n-1).

    a0 must lie strictly in (1/n, 1): the boundary breaks mirror descent
    (log of a zero entry) and a0 <= 1/n would not favor the own loss.
    """
    if n < 2:
        raise ValueError("need at least two agents")
    if not (1.0 / n < a0 < 1.0):
        raise ValueError(f"a0 must be in (1/{n}, 1), got {a0}")
    off = (1.0 - a0) / (n - 1)
    A = np.full((n, n), off)
    np.fill_diagonal(A, a0)
    return A


def identity_mixing(n: int) -> np.ndarray:
    """Exact identity rows (selfish baseline). Boundary of the simplex:
    valid for mixing but not for mirror-descent updates."""
    return np.eye(n)


def uniform_mixing(n: int) -> np.ndarray:
    """Fully cooperative rows A_ij = 1/n (group-average loss)."""
    return np.full((n, n), 1.0 / n)


def mix_losses(A: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Transformed losses f^A = A^T f; total is conserved exactly."""
    A = np.asarray(A, dtype=float)
    f = np.asarray(f, dtype=float)
    if A.shape != (f.size, f.size):
        raise ValueError(f"shape mismatch: A {A.shape} vs f {f.shape}")
    return A.T @ f


def mix_rewards(A: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Identical contract to mix_losses; rewards are negated losses."""
    return mix_losses(A, r)


def kl_anchor(row: np.ndarray, owner: int) -> float:
    """KL(e_owner || row) = -log(row[owner]), the pull back to selfishness."""
    w = max(float(row[owner]), WEIGHT_FLOOR)
    return -float(np.log(w))


def kl_anchor_grad(row: np.ndarray, owner: int) -> np.ndarray:
    """Euclidean gradient of kl_anchor: -1/row[owner] at the owner, 0 elsewhere.

    This equals the negation of the elementwise ratio e_owner / row that the
    bandit update subtracts with coefficient nu.
    """
    g = np.zeros_like(np.asarray(row, dtype=float))
    g[owner] = -1.0 / max(float(row[owner]), WEIGHT_FLOOR)
    return g


def mirror_step(row: np.ndarray, grad: np.ndarray, eta: float, bounds: LogitBounds) -> np.ndarray:
    """Entropic mirror-descent step softmax(clip(log(row) - eta*grad, lo, hi)).

    The clip is applied to the post-update logits, so the step is total: any
    gradient yields a valid interior row.
    """
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    row = np.maximum(np.asarray(row, dtype=float), WEIGHT_FLOOR)
    logits = np.clip(np.log(row) - eta * np.asarray(grad, dtype=float), bounds.lo, bounds.hi)
    return softmax(logits)


def softmax(logits: np.ndarray) -> np.ndarray:
    z = np.asarray(logits, dtype=float)
    z = z - z.max()
    e = np.exp(z)
    return e / e.sum()


def sample_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from the unit sphere in R^n via normalized Gaussians."""
    while True:
        v = rng.standard_normal(n)
        norm = np.linalg.norm(v)
        if norm > 0.0:  # zero draw has probability 0 but guard anyway
            return v / norm


def perturb_trial(
    row: np.ndarray, delta: float, rng: np.random.Generator
) -> tuple[np.ndarray, Perturbation]:
    """Perturb a row in logit space along a fresh unit-sphere direction:
    softmax(log(row) + delta * direction)."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    row = np.maximum(np.asarray(row, dtype=float), WEIGHT_FLOOR)
    direction = sample_sphere(row.size, rng)
    perturbed = softmax(np.log(row) + delta * direction)
    return perturbed, Perturbation(direction=direction, scale=delta)
