"""Hierarchical election: two two-candidate parties.

Candidates within a party play a two-player convex prisoner's dilemma
(negative advertising hurts the mate), while the parties as wholes compete
through a bilinear zero-sum term kz * s1 * s2 on the party strategy sums
(+ for party one, - for party two), which sums to zero identically. The
desired compromise forms two teams — within-party mixing — while keeping
the antisymmetric zero-sum coupling, visible as complex eigenvalues of the
mixed-game Jacobian.
"""

from __future__ import annotations

import numpy as np

from d3c.games.base import Game

PARTY_ONE = (0, 1)
PARTY_TWO = (2, 3)


class ElectionGame(Game):
    """Four scalar-strategy candidates; players 0,1 vs players 2,3."""

    def __init__(self, w_pd: float = 1.0, kz: float = 0.25, c: float = 1.0):
        if w_pd <= 0:
            raise ValueError("w_pd must be positive")
        self.w_pd = float(w_pd)
        self.kz = float(kz)
        self.c = float(c)
        self.n = 4
        self.dims = (1, 1, 1, 1)

    def zero_sum_terms(self, x) -> np.ndarray:
        s1 = x[0] + x[1]
        s2 = x[2] + x[3]
        z = self.kz * s1 * s2
        return np.array([z, z, -z, -z])

    def losses(self, x):
        x = np.asarray(x, dtype=float)
        w, c = self.w_pd, self.c
        pd = np.array(
            [
                x[0] ** 2 + (x[1] - c) ** 2,
                (x[0] - c) ** 2 + x[1] ** 2,
                x[2] ** 2 + (x[3] - c) ** 2,
                (x[2] - c) ** 2 + x[3] ** 2,
            ]
        )
        return w * pd + self.zero_sum_terms(x)

    def loss_grads(self, x):
        x = np.asarray(x, dtype=float)
        w, c, kz = self.w_pd, self.c, self.kz
        s1 = x[0] + x[1]
        s2 = x[2] + x[3]
        g = np.zeros((4, 4))
        # intra-party PD blocks
        g[0, 0] = 2 * w * x[0]
        g[0, 1] = 2 * w * (x[1] - c)
        g[1, 0] = 2 * w * (x[0] - c)
        g[1, 1] = 2 * w * x[1]
        g[2, 2] = 2 * w * x[2]
        g[2, 3] = 2 * w * (x[3] - c)
        g[3, 2] = 2 * w * (x[2] - c)
        g[3, 3] = 2 * w * x[3]
        # zero-sum coupling kz*s1*s2, sign +,+,-,-
        for i, sign in enumerate((1.0, 1.0, -1.0, -1.0)):
            g[i, 0] += sign * kz * s2
            g[i, 1] += sign * kz * s2
            g[i, 2] += sign * kz * s1
            g[i, 3] += sign * kz * s1
        return g

    def loss_hessians(self, x):
        w, kz = self.w_pd, self.kz
        H = np.zeros((4, 4, 4))
        for j in range(4):
            party = PARTY_ONE if j in PARTY_ONE else PARTY_TWO
            for k in party:
                H[j, k, k] = 2 * w
            sign = 1.0 if j in PARTY_ONE else -1.0
            for r in PARTY_ONE:
                for col in PARTY_TWO:
                    H[j, r, col] = sign * kz
                    H[j, col, r] = sign * kz
        return H


def election_build(w_pd: float = 1.0, kz: float = 0.25, c: float = 1.0) -> ElectionGame:
    return ElectionGame(w_pd=w_pd, kz=kz, c=c)
