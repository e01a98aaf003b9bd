"""Loss mixing on the simplex: the primitive everything else builds on.

Each agent owns one row of a right-stochastic matrix A and decides how to
redistribute its own loss across the group. Mixed losses are A^T f, so
column i composes what agent i actually feels — and the total is conserved
no matter what the rows do (budget balance). Rows move by entropic mirror
descent and explore via committed sphere perturbations.
"""

import numpy as np

from d3c.mixing import (
    LogitBounds,
    init_mixing,
    kl_anchor,
    mirror_step,
    mix_losses,
    perturb_trial,
    uniform_mixing,
)

rng = np.random.default_rng(0)

print("=== the mixing transform ===")
A = init_mixing(3, 0.99)
f = np.array([6.0, -1.5, 2.25])
print("initial rows (each agent keeps 99% of its own loss):")
print(A)
print("losses        :", f)
print("mixed losses  :", mix_losses(A, f).round(4))
print("totals        :", f.sum(), "->", mix_losses(A, f).sum(), "(conserved)")

print("\nfully cooperative rows give everyone the group mean:")
print("mixed losses  :", mix_losses(uniform_mixing(3), f).round(4))

print("\n=== mirror descent on a row ===")
row = A[0]
print("row before    :", row.round(4))
print("KL anchor     :", round(kl_anchor(row, 0), 6), "(pull back toward selfish)")
# a gradient that blames the first entry: weight drains to the others
stepped = mirror_step(row, np.array([4.0, 0.0, 0.0]), eta=1.0, bounds=LogitBounds(-5, 5))
print("after step    :", stepped.round(4), "(still on the simplex)")

print("\n=== committed sphere perturbations (the bandit explorer) ===")
for _ in range(3):
    perturbed, pert = perturb_trial(row, delta=1.0, rng=rng)
    print(f"direction {pert.direction.round(3)} -> trial row {perturbed.round(4)}")
