"""Two-player bilinear game on the 1-simplex.

Players hold 2-d logits; strategies are softmax(logits). Even under fully
cooperative mixing the summed objective x1^T (B1 + B2) x2 is a saddle over
the product of simplices with two competing corner minima, so local
compromise dynamics can only reach the basin they start in.
"""

from __future__ import annotations

import numpy as np

from d3c.games.base import Game


class BilinearSimplexGame(Game):
    """f_i = softmax(th1)^T B_i softmax(th2) with B_1 = B_2 = C/2."""

    def __init__(self, a: float, b: float, c: float, d: float):
        self.payoff = np.array([[a, b], [c, d]], dtype=float)
        self.B = [self.payoff / 2.0, self.payoff / 2.0]
        self.n = 2
        self.dims = (2, 2)

    @staticmethod
    def _softmax(z):
        z = np.asarray(z, dtype=float)
        z = z - z.max()
        e = np.exp(z)
        return e / e.sum()

    def _strategies(self, x):
        return self._softmax(x[:2]), self._softmax(x[2:])

    def losses(self, x):
        p1, p2 = self._strategies(x)
        return np.array([p1 @ self.B[0] @ p2, p1 @ self.B[1] @ p2])

    def loss_grads(self, x):
        p1, p2 = self._strategies(x)
        j1 = np.diag(p1) - np.outer(p1, p1)
        j2 = np.diag(p2) - np.outer(p2, p2)
        out = np.zeros((2, 4))
        for i in range(2):
            out[i, :2] = j1 @ (self.B[i] @ p2)
            out[i, 2:] = j2 @ (self.B[i].T @ p1)
        return out


def bilinear_losses(x: np.ndarray, game: BilinearSimplexGame) -> np.ndarray:
    """Per-player losses at stacked logits x = [theta_1; theta_2]."""
    return game.losses(x)


def cooperative_corner_values(a: float, b: float, c: float, d: float) -> tuple[float, float]:
    """Summed loss at the two competing corners (p,q)=(1,0) and (0,1)."""
    return b, c


def bilinear_basin_fraction(
    a: float,
    b: float,
    c: float,
    d: float,
    trials: int,
    rng: np.random.Generator,
    dt: float = 0.02,
    steps: int = 6000,
) -> float:
    """Fraction of uniform-random (p, q) starts whose cooperative gradient
    flow reaches the corner (p, q) = (1, 0).

    Starts are uniform in probability; the flow itself runs in logit space
    (players hold logits, probabilities are softmax), descending
    f(p, q) = a pq + b p(1-q) + c (1-p) q + d (1-p)(1-q). Ends are
    classified by the majority coordinate, which splits cleanly once past
    the interior saddle.
    """
    coupling = a - b - c + d
    p = rng.uniform(0.0, 1.0, size=trials)
    q = rng.uniform(0.0, 1.0, size=trials)
    th_p = np.log(p) - np.log1p(-p)
    th_q = np.log(q) - np.log1p(-q)
    for _ in range(steps):
        p = 1.0 / (1.0 + np.exp(-th_p))
        q = 1.0 / (1.0 + np.exp(-th_q))
        th_p -= dt * (coupling * q + (b - d)) * p * (1.0 - p)
        th_q -= dt * (coupling * p + (c - d)) * q * (1.0 - q)
    p = 1.0 / (1.0 + np.exp(-th_p))
    q = 1.0 / (1.0 + np.exp(-th_q))
    return float(np.mean((p > 0.5) & (q < 0.5)))
