"""n-player prisoner's dilemma with convex losses.

Each player i holds n-1 real strategies, one per opponent (x is the
row-major flattening of the n x (n-1) grid). The target matrix C is a
column-reversed circulant: every player wants to defect against everyone,
wants everyone else to defect against each other, and wants everyone to
cooperate with itself. Gradient play converges to the all-defect Nash at
the origin; the welfare optimum puts every entry at c/n.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import circulant

from d3c.games.base import Game


def pd_build_c(n: int, c: float) -> np.ndarray:
    """Target matrix of the dilemma: reversed circulant, n x n(n-1)."""
    if n < 2:
        raise ValueError("need at least two players")
    if c <= 0:
        raise ValueError("c must be positive")
    row = np.array(([0.0] * (n - 1) + [float(c)]) * (n - 1))[::-1]
    return circulant(row)[:n, ::-1]


class PDGame(Game):
    def __init__(self, n: int, c: float = 1.0):
        self.n = n
        self.c = float(c)
        self.C = pd_build_c(n, c)
        self.dims = tuple([n - 1] * n)
        # Direct evaluation of the construction: per-player Nash loss is
        # (n-1)c^2 at the origin, the optimum puts every entry at c/n.
        self.nash_total = n * (n - 1) * c * c
        self.opt_total = (n - 1) ** 2 * c * c
        self.opt_entry = c / n

    def losses(self, x):
        d = np.asarray(x, dtype=float)[None, :] - self.C
        return (d * d).sum(axis=1)

    def loss_grads(self, x):
        return 2.0 * (np.asarray(x, dtype=float)[None, :] - self.C)

    def loss_hessians(self, x):
        eye = 2.0 * np.eye(self.dim)
        return np.broadcast_to(eye, (self.n, self.dim, self.dim)).copy()


def pd_losses(x: np.ndarray, game: PDGame) -> np.ndarray:
    return game.losses(x)


def pd_maverick_values(n: int, m: int, c: float = 1.0) -> tuple[float, float]:
    """(cooperator loss, all-defect per-player loss) with m frozen defectors.

    Cooperators that solve their (n-m)-player subgame end with
    m*c^2 + (n-m-1)^2 c^2 / (n-m), strictly below the all-defect value
    (n-1)c^2, which itself lower-bounds what the defectors actually get.
    """
    if not 0 <= m < n - 1:
        raise ValueError("need 0 <= m < n-1 so that a subgame remains")
    s = n - m
    cooperator = m * c * c + (s - 1) ** 2 * c * c / s
    all_defect = (n - 1) * c * c
    return cooperator, all_defect
