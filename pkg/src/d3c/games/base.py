"""Differentiable n-player game contract.

A game exposes its loss vector and the full (n_players, dim) table of loss
gradients over the stacked strategy vector. Per-player parameter blocks are
slices of that vector; players whose natural domain is a simplex hold logits
and the game applies softmax internally, so every game's dynamics run in
unconstrained coordinates (optionally clipped, e.g. the box of Game 1).
"""

from __future__ import annotations

import numpy as np


class Game:
    """Base contract; concrete games fill in losses and loss_grads."""

    n: int
    dims: tuple[int, ...]
    nash_total: float | None = None
    opt_total: float | None = None

    @property
    def dim(self) -> int:
        return int(sum(self.dims))

    def block(self, i: int) -> slice:
        start = int(sum(self.dims[:i]))
        return slice(start, start + self.dims[i])

    def losses(self, x: np.ndarray) -> np.ndarray:
        """Length-n loss vector at joint strategy x."""
        raise NotImplementedError

    def loss_grads(self, x: np.ndarray) -> np.ndarray:
        """(n, dim) table; row j is the full gradient of loss j."""
        raise NotImplementedError

    def loss_hessians(self, x: np.ndarray) -> np.ndarray:
        """(n, dim, dim) stack of loss Hessians, where available."""
        raise NotImplementedError

    def clip_strategies(self, x: np.ndarray) -> np.ndarray:
        """Project a post-step strategy vector back to the feasible set."""
        return x

    def init_strategies(self, rng: np.random.Generator) -> np.ndarray:
        """Random strategy draw used by experiment presets."""
        return rng.standard_normal(self.dim)


def fd_loss_grads(game: Game, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient table; the oracle for analytic gradients."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((game.n, x.size))
    for k in range(x.size):
        up, dn = x.copy(), x.copy()
        up[k] += h
        dn[k] -= h
        out[:, k] = (game.losses(up) - game.losses(dn)) / (2 * h)
    return out


def assert_grads_match_fd(
    game: Game,
    points: int = 50,
    seed: int = 0,
    rel_tol: float = 1e-5,
    h: float = 1e-6,
    scale: float = 1.0,
) -> None:
    """Check analytic gradients against central differences at random points."""
    rng = np.random.default_rng(seed)
    for _ in range(points):
        x = game.clip_strategies(rng.normal(scale=scale, size=game.dim))
        g = game.loss_grads(x)
        fd = fd_loss_grads(game, x, h=h)
        denom = max(1.0, float(np.abs(fd).max()))
        err = float(np.abs(g - fd).max()) / denom
        if err >= rel_tol:
            raise AssertionError(f"gradient mismatch: rel err {err:.3e} at x={x!r}")
