"""Coins: two agents on a 5x5 grid collecting typed coins.

Each step both agents move (or stay); walking onto a coin collects it for
+1, and if the coin's type belongs to the other agent, that agent gets -2.
After movement, each coin type independently spawns with probability 0.005
at a uniformly random free cell (no coin, no agent). Episodes run 500
steps. Total reward is maximized by only taking own-type coins; taking
everything is individually tempting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

GRID = 5
N_CELLS = GRID * GRID
EPISODE_LEN = 500
SPAWN_P = 0.005
PICKUP = 1.0
VICTIM_PENALTY = -2.0

# actions: stay, up, down, left, right
MOVES = ((0, 0), (-1, 0), (1, 0), (0, -1), (0, 1))
N_ACTIONS = len(MOVES)


@dataclass
class CoinsWorld:
    positions: list[tuple[int, int]]
    coins: dict = field(default_factory=dict)  # cell -> coin type (0 or 1)
    step_idx: int = 0

    @property
    def done(self) -> bool:
        return self.step_idx >= EPISODE_LEN


def coins_reset(rng: np.random.Generator) -> CoinsWorld:
    cells = rng.choice(N_CELLS, size=2, replace=False)
    positions = [divmod(int(c), GRID) for c in cells]
    return CoinsWorld(positions=positions)


def _clip_move(pos: tuple[int, int], action: int) -> tuple[int, int]:
    dr, dc = MOVES[action]
    return (min(max(pos[0] + dr, 0), GRID - 1), min(max(pos[1] + dc, 0), GRID - 1))


def coins_step(
    world: CoinsWorld, actions: tuple[int, int], rng: np.random.Generator
) -> tuple[CoinsWorld, np.ndarray]:
    """Simultaneous clipped moves, pickups, then per-type spawn attempts.

    If both agents land on the same coin, the collector is drawn uniformly.
    """
    if world.done:
        raise ValueError("episode is over")
    new_pos = [_clip_move(world.positions[k], actions[k]) for k in range(2)]
    rewards = np.zeros(2)
    coins = dict(world.coins)
    if new_pos[0] == new_pos[1]:
        landers = [int(rng.integers(2))] if new_pos[0] in coins else []
    else:
        landers = [k for k in range(2) if new_pos[k] in coins]
    for k in landers:
        ctype = coins.pop(new_pos[k])
        rewards[k] += PICKUP
        if ctype != k:
            rewards[ctype] += VICTIM_PENALTY
    for ctype in (0, 1):
        if rng.random() < SPAWN_P:
            free = [
                divmod(c, GRID)
                for c in range(N_CELLS)
                if divmod(c, GRID) not in coins and divmod(c, GRID) not in new_pos
            ]
            if free:
                coins[free[int(rng.integers(len(free)))]] = ctype
    return CoinsWorld(positions=new_pos, coins=coins, step_idx=world.step_idx + 1), rewards


def coins_observation(world: CoinsWorld, agent: int) -> np.ndarray:
    """Flattened one-hot planes: self, other, own-type coins, other-type coins."""
    planes = np.zeros((4, GRID, GRID))
    planes[0][world.positions[agent]] = 1.0
    planes[1][world.positions[1 - agent]] = 1.0
    for cell, ctype in world.coins.items():
        planes[2 if ctype == agent else 3][cell] = 1.0
    return planes.ravel()
