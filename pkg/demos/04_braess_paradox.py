"""Braess's paradox: a dominant shortcut that makes every commute worse.

Four drivers commute S -> E. Without the shortcut they split evenly over
the two roads for 65 minutes each. Adding a strictly-dominant shortcut
drags selfish drivers onto it for an 80-minute commute. Compromising
drivers route around the trap.
"""

import numpy as np

from d3c.exact import ExactConfig, run_exact
from d3c.games import TrafficGame, fig2_network, gen_braess, traffic_expected_commutes
from d3c.mixing import init_mixing

print("=== the fixed network (F=G=10, C=D=45, E=0) ===")
net = fig2_network(shortcut=True)
split = np.array([[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0]], dtype=float)
all_shortcut = np.tile([0.0, 0.0, 1.0], (4, 1))
print("2/2 split over the roads:", traffic_expected_commutes(split, net).round(2), "min")
print("everyone on the shortcut:", traffic_expected_commutes(all_shortcut, net).round(2), "min")

game = TrafficGame(net)
cfg = dict(dt=0.01, steps=3000, log_every=3000)
gd, d3c = [], []
for seed in range(10):
    rec = run_exact(game, ExactConfig(eta_a=0.0, **cfg),
                    lambda r: r.standard_normal(game.dim), seed=seed)
    gd.append(rec.raw[-1].mean())
    rec = run_exact(game, ExactConfig(eta_a=1.0, epsilon=0.1, **cfg),
                    lambda r: r.standard_normal(game.dim), seed=seed,
                    A0=init_mixing(4, 0.99))
    d3c.append(rec.raw[-1].mean())
print(f"\nselfish drivers  : {np.mean(gd):6.2f} min average commute (the paradox)")
print(f"compromising     : {np.mean(d3c):6.2f} min average commute")

print("\n=== a randomly generated paradox network ===")
rng = np.random.default_rng(42)
random_net = gen_braess(delta=20.0, rng=rng)
print("parameters:", random_net.to_record())
rgame = TrafficGame(random_net)
print(f"all-shortcut Nash total {rgame.nash_total:.0f} vs best split {rgame.opt_total:.0f} "
      f"(ratio {rgame.nash_total / rgame.opt_total:.3f})")
