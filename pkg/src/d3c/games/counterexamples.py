"""Two-player counterexample games.

NashParadoxGame: the unique Nash is the worst outcome for everyone; its
price of anarchy (1/kappa)/(2-kappa) blows up as kappa -> 0. UnfairGame:
welfare minimization is unboundedly inequitable while the Nash is benign.
Both are used to exercise compromise dynamics where pure self-interest or
pure welfare each fail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from d3c.games.base import Game


@dataclass
class Game1ClosedForms:
    nash_point: np.ndarray
    nash_loss: float  # per player
    opt_point: np.ndarray
    opt_loss: float  # per player
    poa: float


class NashParadoxGame(Game):
    """f_1 = x_1^2 + 1/(x_2^2 + kappa), f_2 symmetric; strategies in [0, 1]."""

    def __init__(self, kappa: float):
        if not 0.0 <= kappa < 1.0:
            raise ValueError("kappa must be in [0, 1)")
        self.kappa = float(kappa)
        self.n = 2
        self.dims = (1, 1)
        if kappa > 0:
            forms = self.closed_forms()
            self.nash_total = 2 * forms.nash_loss
            self.opt_total = 2 * forms.opt_loss

    def losses(self, x):
        x1, x2 = float(x[0]), float(x[1])
        k = self.kappa
        return np.array([x1 * x1 + 1.0 / (x2 * x2 + k), x2 * x2 + 1.0 / (x1 * x1 + k)])

    def loss_grads(self, x):
        x1, x2 = float(x[0]), float(x[1])
        k = self.kappa
        return np.array(
            [
                [2 * x1, -2 * x2 / (x2 * x2 + k) ** 2],
                [-2 * x1 / (x1 * x1 + k) ** 2, 2 * x2],
            ]
        )

    def clip_strategies(self, x):
        return np.clip(x, 0.0, 1.0)

    def init_strategies(self, rng):
        return rng.uniform(0.0, 1.0, size=2)

    def closed_forms(self) -> Game1ClosedForms:
        k = self.kappa
        nash_loss = np.inf if k == 0 else 1.0 / k
        opt = np.sqrt(1.0 - k)
        opt_loss = 2.0 - k
        poa = np.inf if k == 0 else (1.0 / k) / (2.0 - k)
        return Game1ClosedForms(
            nash_point=np.zeros(2),
            nash_loss=nash_loss,
            opt_point=np.array([opt, opt]),
            opt_loss=opt_loss,
            poa=poa,
        )


class UnfairGame(Game):
    """f_1 = x_1^2, f_2 = x_2^2 - (11/10) x_1^2.

    Nash is (0, 0) with zero losses; total loss is unbounded below as
    |x_1| -> inf, so full welfare minimization is infinitely unfair to
    player 1.
    """

    def __init__(self):
        self.n = 2
        self.dims = (1, 1)

    def losses(self, x):
        x1, x2 = float(x[0]), float(x[1])
        return np.array([x1 * x1, x2 * x2 - 1.1 * x1 * x1])

    def loss_grads(self, x):
        x1, x2 = float(x[0]), float(x[1])
        return np.array([[2 * x1, 0.0], [-2.2 * x1, 2 * x2]])

    def loss_hessians(self, x):
        return np.array([[[2.0, 0.0], [0.0, 0.0]], [[-2.2, 0.0], [0.0, 2.0]]])


def game1_losses(x: np.ndarray, kappa: float) -> np.ndarray:
    return NashParadoxGame(kappa).losses(x)


def game1_closed_forms(kappa: float) -> Game1ClosedForms:
    return NashParadoxGame(kappa).closed_forms()


def game2_losses(x: np.ndarray) -> np.ndarray:
    return UnfairGame().losses(x)
