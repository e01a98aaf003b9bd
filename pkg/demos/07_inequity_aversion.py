"""Efficient but unfair: compromise that knows when to stop.

Game: min x1^2 vs min x2^2 - 1.1 x1^2. Total loss is unbounded below as
|x1| grows, so full welfare minimization sacrifices player 1 completely.
Compromise dynamics instead shift just enough of player 2's loss onto
player 1 that player 1's training halts: the weights composing player 1's
mixed loss settle at the ratio 11/10 — the exact coefficient of the
externality — and both players keep finite losses.
"""

import numpy as np

from d3c.exact import ExactConfig, run_exact
from d3c.games import UnfairGame
from d3c.mixing import init_mixing

game = UnfairGame()
cfg = ExactConfig(dt=0.001, eta_a=0.03, epsilon=0.0, steps=5000, log_every=500)

def init(rng):
    return np.array([1.1, 0.22]) * rng.choice([-1.0, 1.0], size=2)

rec = run_exact(game, cfg, init, seed=5, A0=init_mixing(2, 0.99))

print("step   f1       f2       A_11/A_21 (weights inside player 1's mixed loss)")
for t in range(rec.steps.size):
    A = rec.a_entries[t].reshape(2, 2)
    print(f"{rec.steps[t]:5d}  {rec.raw[t][0]:+.4f}  {rec.raw[t][1]:+.4f}  {A[0,0]/A[1,0]:9.3f}")

A = rec.final_A
print(f"\nfinal losses ({rec.raw[-1][0]:.3f}, {rec.raw[-1][1]:.3f}); "
      f"composition ratio {A[0,0]/A[1,0]:.3f} ≈ 11/10")
print("player 1's descent rate is proportional to A_11 - 1.1*A_21: once the")
print("ratio hits 11/10 its training halts — implicit inequity aversion.")
