"""Four-driver traffic networks exhibiting Braess's paradox.

Drivers route from S to E over a top road (S-A-E, constant C plus congestion
F per driver on S-A), a bottom road (S-B-E, constant D plus congestion G on
B-E), and optionally the shortcut S-A-B-E (constant E, congested on both
shared edges). With the shortcut active and E small enough it is strictly
dominant, so selfish play funnels everyone onto it even though splitting
over the two roads is socially better.

Expected commute times under independent stochastic routing have the exact
closed form trace(M Cov_i) + p_i^T M s + b^T p_i, quadratic in the stacked
route probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from d3c.games.base import Game

N_DRIVERS = 4


@dataclass(frozen=True)
class TrafficNetwork:
    """Commute parameters in minutes (C, D, E) and minutes/driver (F, G)."""

    C: int
    D: int
    E: int
    F: int
    G: int
    shortcut: bool = True
    seed: int | None = None

    @property
    def n_routes(self) -> int:
        return 3 if self.shortcut else 2

    def cost_terms(self) -> tuple[np.ndarray, np.ndarray]:
        """(M, b) with route order [top, bottom, shortcut?]."""
        F, G = float(self.F), float(self.G)
        if self.shortcut:
            M = np.array([[F, 0.0, F], [0.0, G, G], [F, G, F + G]])
            b = np.array([self.C, self.D, self.E], dtype=float)
        else:
            M = np.array([[F, 0.0], [0.0, G]])
            b = np.array([self.C, self.D], dtype=float)
        return M, b

    def to_record(self) -> str:
        seed = "" if self.seed is None else f" seed={self.seed}"
        return (
            f"C={self.C} D={self.D} E={self.E} F={self.F} G={self.G}"
            f" shortcut={int(self.shortcut)}{seed}"
        )

    @classmethod
    def from_record(cls, record: str) -> "TrafficNetwork":
        fields = dict(item.split("=", 1) for item in record.split())
        return cls(
            C=int(fields["C"]),
            D=int(fields["D"]),
            E=int(fields["E"]),
            F=int(fields["F"]),
            G=int(fields["G"]),
            shortcut=bool(int(fields.get("shortcut", "1"))),
            seed=int(fields["seed"]) if "seed" in fields else None,
        )


def fig2_network(shortcut: bool = True) -> TrafficNetwork:
    """The fixed 65-vs-80 minute network (F=G=10, C=D=45, E=0)."""
    return TrafficNetwork(C=45, D=45, E=0, F=10, G=10, shortcut=shortcut)


def traffic_expected_commutes(probs: np.ndarray, net: TrafficNetwork) -> np.ndarray:
    """Exact expected commute per driver for stochastic route choices.

    probs has shape (4, n_routes), one distribution per driver. Pure
    strategies zero the covariance term and reduce to deterministic loads.
    """
    probs = np.asarray(probs, dtype=float)
    k = net.n_routes
    if probs.shape != (N_DRIVERS, k):
        raise ValueError(f"expected probs of shape {(N_DRIVERS, k)}, got {probs.shape}")
    if np.any(probs < 0):
        raise ValueError("route probabilities must be nonnegative")
    M, b = net.cost_terms()
    s = probs.sum(axis=0)
    out = np.empty(N_DRIVERS)
    for i in range(N_DRIVERS):
        p = probs[i]
        cov = np.diag(p) - np.outer(p, p)
        out[i] = np.trace(M @ cov) + p @ M @ s + b @ p
    return out


def enumerate_pure_totals(net: TrafficNetwork) -> np.ndarray:
    """Total commute for every pure route profile (n_routes^4 entries)."""
    k = net.n_routes
    totals = []
    for idx in np.ndindex(*([k] * N_DRIVERS)):
        probs = np.zeros((N_DRIVERS, k))
        probs[np.arange(N_DRIVERS), list(idx)] = 1.0
        totals.append(traffic_expected_commutes(probs, net).sum())
    return np.array(totals)


def shortcut_is_dominant(net: TrafficNetwork) -> bool:
    """Strict dominance of the shortcut for every opponent profile."""
    if not net.shortcut:
        return False
    return net.E < min(net.C - N_DRIVERS * net.G, net.D - N_DRIVERS * net.F)


def two_road_tau_opt(F: int, G: int, C: int, D: int) -> int:
    """Best no-shortcut pure split over n_sa in {1, 2, 3}."""
    totals = [
        n_sa * (F * n_sa + C) + (N_DRIVERS - n_sa) * (G * (N_DRIVERS - n_sa) + D)
        for n_sa in (1, 2, 3)
    ]
    return int(min(totals))


def tau_nash(net: TrafficNetwork) -> int:
    """Total commute when all four drivers take the shortcut."""
    return N_DRIVERS * (N_DRIVERS * (net.F + net.G) + net.E)


def gen_braess(delta: float, rng: np.random.Generator, seed: int | None = None) -> TrafficNetwork:
    """Rejection-sample a network where the shortcut paradox holds.

    Guarantees (strictly): the shortcut dominates every alternative, and
    tau_Nash > tau_opt + delta against the best no-shortcut pure split.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    while True:
        F = int(rng.integers(1, 21))
        G = int(rng.integers(1, 21))
        C = int(rng.integers(4 * G + 10, 4 * G + 21))
        D = int(rng.integers(4 * F + 10, 4 * F + 21))
        tau_opt = two_road_tau_opt(F, G, C, D)
        # smallest integer E with 4*(4(F+G) + E) strictly above tau_opt + delta
        e_min = max(math.floor((tau_opt + delta) / 4.0) - 4 * (F + G) + 1, 0)
        e_max = min(C - 4 * G, D - 4 * F)
        if e_min < e_max:
            E = int(rng.integers(e_min, e_max))  # excludes e_max: strict dominance
            return TrafficNetwork(C=C, D=D, E=E, F=F, G=G, shortcut=True, seed=seed)


class TrafficGame(Game):
    """Drivers hold route logits; probabilities are softmax(logits)."""

    def __init__(self, net: TrafficNetwork):
        self.net = net
        self.n = N_DRIVERS
        self.dims = tuple([net.n_routes] * N_DRIVERS)
        self.M, self.b = net.cost_terms()
        totals = enumerate_pure_totals(net)
        self.opt_total = float(totals.min())
        if shortcut_is_dominant(net):
            self.nash_total = float(tau_nash(net))
        elif not net.shortcut:
            self.nash_total = self._enumerate_worst_nash()
        else:
            self.nash_total = None

    def _probs(self, x):
        p = np.empty((self.n, self.net.n_routes))
        for i in range(self.n):
            z = np.asarray(x[self.block(i)], dtype=float)
            z = z - z.max()
            e = np.exp(z)
            p[i] = e / e.sum()
        return p

    def losses(self, x):
        return traffic_expected_commutes(self._probs(x), self.net)

    def loss_grads(self, x):
        p = self._probs(x)
        M, b = self.M, self.b
        s = p.sum(axis=0)
        m_diag = np.diag(M).copy()
        grads = np.zeros((self.n, self.dim))
        for i in range(self.n):
            for m in range(self.n):
                if m == i:
                    gp = m_diag + b + M @ s - M @ p[i]
                else:
                    gp = M @ p[i]
                jac = np.diag(p[m]) - np.outer(p[m], p[m])  # softmax Jacobian
                grads[i, self.block(m)] = jac @ gp
        return grads

    def _enumerate_worst_nash(self) -> float | None:
        """Worst pure-Nash total by brute force (no-shortcut networks)."""
        k = self.net.n_routes
        worst = None
        for idx in np.ndindex(*([k] * N_DRIVERS)):
            idx = list(idx)
            probs = np.zeros((N_DRIVERS, k))
            probs[np.arange(N_DRIVERS), idx] = 1.0
            commutes = traffic_expected_commutes(probs, self.net)
            is_nash = True
            for i in range(N_DRIVERS):
                for alt in range(k):
                    if alt == idx[i]:
                        continue
                    trial = probs.copy()
                    trial[i] = 0.0
                    trial[i, alt] = 1.0
                    if traffic_expected_commutes(trial, self.net)[i] < commutes[i] - 1e-12:
                        is_nash = False
                        break
                if not is_nash:
                    break
            if is_nash:
                total = float(commutes.sum())
                worst = total if worst is None else max(worst, total)
        return worst
