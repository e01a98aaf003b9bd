"""A game whose Nash is the worst outcome — and the local bound that sees it.

Game: f_1 = x1^2 + 1/(x2^2 + k), f_2 symmetric, strategies in [0, 1].
Gradient play lands on the unique Nash (0, 0) where everyone's loss is 1/k;
the welfare optimum is far better. Agents that descend the local price-of-
anarchy bound mix losses and find it.
"""

import numpy as np

from d3c.exact import ExactConfig, run_exact
from d3c.games import NashParadoxGame, game1_closed_forms
from d3c.mixing import init_mixing
from d3c.poa import LocalSnapshot, PoaConfig, local_poa_utilitarian

kappa = 0.5
forms = game1_closed_forms(kappa)
print(f"kappa = {kappa}")
print(f"Nash point {forms.nash_point}, per-player loss {forms.nash_loss}")
print(f"optimum    {forms.opt_point.round(4)}, per-player loss {forms.opt_loss}")
print(f"price of anarchy = {forms.poa:.4f}")

print("\n=== the local utilitarian bound on a suffering snapshot ===")
snap = LocalSnapshot(
    mixed_losses=np.array([2.0, 2.0]),
    loss_rates=np.array([0.8, -0.1]),
    own_grad_sqnorms=np.array([1.0, 1.0]),
)
rho, rho_max = local_poa_utilitarian(snap, PoaConfig(dt=0.05, mu_bar=np.inf))
print("per-agent bounds:", rho.round(4), "game bound:", round(rho_max, 4))
print("(1 exactly whenever every mixed loss is falling)")

print("\n=== selfish descent vs compromise ===")
game = NashParadoxGame(kappa)
cfg_gd = ExactConfig(dt=0.01, eta_a=0.0, steps=2000, log_every=2000)
cfg_d3c = ExactConfig(dt=0.01, eta_a=1.0, epsilon=0.01, steps=2000, log_every=2000)
for name, cfg, A0 in [("gradient descent", cfg_gd, None), ("compromise", cfg_d3c, init_mixing(2, 0.99))]:
    totals = []
    for seed in range(10):
        rec = run_exact(game, cfg, lambda r: r.uniform(0, 1, 2), seed=seed, A0=A0)
        totals.append(rec.raw[-1].sum())
    print(f"{name:17s}: mean final total loss {np.mean(totals):.4f} "
          f"(Nash total {2*forms.nash_loss}, optimal total {2*forms.opt_loss})")
