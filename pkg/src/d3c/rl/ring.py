"""Trust-Your-Brother: a predator chases two prey around a 6-cell ring.

Episodes last 5 steps. Each step: the predator commits to a plan from the
step-start state (stay if already adjacent to a prey, otherwise one cell
along the shorter arc toward the nearest prey, ties broken uniformly);
the prey then move simultaneously; the predator executes its plan (staying
if a prey sits on its target cell). A prey pays -0.01 for any attempted
move and -1 whenever the predator's final position is adjacent to it. A
cornered prey can only escape if its partner simultaneously vacates the
cell behind it, which is the whole dilemma: the partner gains nothing by
moving.

Both prey observe the same 2-feature vector: (ccw - cw) ring distance from
prey 0 to the predator, and the same for prey 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

N_CELLS = 6
EPISODE_LEN = 5
MOVE_COST = -0.01
CAUGHT = -1.0

STAY, CCW, CW = 0, 1, 2
ACTIONS = (STAY, CCW, CW)


@dataclass
class RingWorld:
    predator: int
    prey: tuple[int, int]
    step_idx: int = 0

    def __post_init__(self):
        positions = {self.predator, *self.prey}
        if len(positions) != 3:
            raise ValueError("predator and prey positions must be distinct")

    @property
    def done(self) -> bool:
        return self.step_idx >= EPISODE_LEN


def ring_distance(a: int, b: int) -> int:
    d = (a - b) % N_CELLS
    return min(d, N_CELLS - d)


def adjacent(a: int, b: int) -> bool:
    return ring_distance(a, b) == 1


def observation(world: RingWorld) -> np.ndarray:
    """(ccw - cw) distance to the predator for each prey; shared by both."""
    out = np.empty(2)
    for k, p in enumerate(world.prey):
        ccw = (world.predator - p) % N_CELLS
        cw = (p - world.predator) % N_CELLS
        out[k] = ccw - cw
    return out


def ring_reset(close_side: int, rng: np.random.Generator) -> RingWorld:
    """Prey start adjacent; the designated prey has exactly one empty cell
    between itself and the predator. Mirrored uniformly at random."""
    if close_side not in (0, 1):
        raise ValueError("close_side selects prey 0 or prey 1")
    close, far, predator = 0, 1, 4  # canonical layout: gap cell 5
    if rng.random() < 0.5:  # reflect the ring
        close, far, predator = (-close) % N_CELLS, (-far) % N_CELLS, (-predator) % N_CELLS
    prey = (close, far) if close_side == 0 else (far, close)
    return RingWorld(predator=predator, prey=prey)


def predator_plans(world: RingWorld) -> list[tuple[float, int]]:
    """(probability, target cell) pairs for the predator's committed plan."""
    p = world.predator
    if any(adjacent(p, q) for q in world.prey):
        return [(1.0, p)]
    d0, d1 = (ring_distance(p, q) for q in world.prey)
    if d0 < d1:
        targets = _steps_toward(p, world.prey[0])
    elif d1 < d0:
        targets = _steps_toward(p, world.prey[1])
    else:  # equidistant: pick the quarry uniformly at random
        targets = _steps_toward(p, world.prey[0]) + _steps_toward(p, world.prey[1])
    prob = 1.0 / len(targets)
    return [(prob, t) for t in targets]


def _steps_toward(src: int, dst: int) -> list[int]:
    """One-cell moves along the shorter arc (both arcs when tied)."""
    ccw = (dst - src) % N_CELLS
    cw = (src - dst) % N_CELLS
    if ccw < cw:
        return [(src + 1) % N_CELLS]
    if cw < ccw:
        return [(src - 1) % N_CELLS]
    return [(src + 1) % N_CELLS, (src - 1) % N_CELLS]


def step_with_plan(
    world: RingWorld, prey_actions: tuple[int, int], plan_target: int
) -> tuple[RingWorld, np.ndarray]:
    """Deterministic transition once the predator's plan is fixed."""
    if world.done:
        raise ValueError("episode is over")
    targets = []
    moved = []
    for k, act in enumerate(prey_actions):
        pos = world.prey[k]
        if act == STAY:
            targets.append(pos)
            moved.append(False)
        else:
            step = 1 if act == CCW else -1
            targets.append((pos + step) % N_CELLS)
            moved.append(True)
    # blocked: the predator's current cell, a shared target, or (second
    # pass) the other prey's settled position
    final = list(targets)
    for k in range(2):
        if moved[k] and final[k] == world.predator:
            final[k] = world.prey[k]
    if moved[0] or moved[1]:
        if final[0] == final[1]:
            final = list(world.prey)
        else:
            for k, other in ((0, 1), (1, 0)):
                if final[k] == final[other] and final[other] == world.prey[other]:
                    final[k] = world.prey[k]
    predator = plan_target if plan_target not in final else world.predator
    rewards = np.zeros(2)
    for k in range(2):
        if moved[k]:
            rewards[k] += MOVE_COST
        if adjacent(predator, final[k]):
            rewards[k] += CAUGHT
    new_world = RingWorld(predator=predator, prey=(final[0], final[1]), step_idx=world.step_idx + 1)
    return new_world, rewards


def ring_step(
    world: RingWorld, prey_actions: tuple[int, int], rng: np.random.Generator
) -> tuple[RingWorld, np.ndarray]:
    plans = predator_plans(world)
    if len(plans) == 1:
        target = plans[0][1]
    else:
        target = plans[int(rng.integers(len(plans)))][1]
    return step_with_plan(world, prey_actions, target)


# ---------------------------------------------------------------------------
# Brute-force oracles


@dataclass(frozen=True)
class RingOracle:
    optimal_total: float
    maximin_individual: float
    selfish_total: float


def _canonical_starts() -> list[RingWorld]:
    return [RingWorld(predator=4, prey=(0, 1)), RingWorld(predator=4, prey=(1, 0))]


def _dp_total(world: RingWorld, memo: dict) -> float:
    """Max expected total (both prey) return by exhaustive joint search."""
    if world.done:
        return 0.0
    key = (world.predator, world.prey, world.step_idx)
    if key in memo:
        return memo[key]
    plans = predator_plans(world)
    best = -np.inf
    for a0 in ACTIONS:
        for a1 in ACTIONS:
            value = 0.0
            for prob, target in plans:
                nxt, rewards = step_with_plan(world, (a0, a1), target)
                value += prob * (rewards.sum() + _dp_total(nxt, memo))
            best = max(best, value)
    memo[key] = best
    return best


def _selfish_policy_value(world: RingWorld, victim: int, memo: dict) -> tuple[float, float]:
    """(victim return, other return) when the other prey always stays and
    the victim best-responds for its own return."""
    if world.done:
        return 0.0, 0.0
    key = (world.predator, world.prey, world.step_idx)
    if key in memo:
        return memo[key]
    plans = predator_plans(world)
    best = (-np.inf, 0.0)
    for act in ACTIONS:
        actions = (act, STAY) if victim == 0 else (STAY, act)
        own, other = 0.0, 0.0
        for prob, target in plans:
            nxt, rewards = step_with_plan(world, actions, target)
            later = _selfish_policy_value(nxt, victim, memo)
            own += prob * (rewards[victim] + later[0])
            other += prob * (rewards[1 - victim] + later[1])
        if own > best[0]:
            best = (own, other)
    memo[key] = best
    return best


def ring_optimal_return() -> RingOracle:
    """Exhaustive-search values over the mirrored pair of canonical starts.

    optimal_total maximizes the two-prey sum; the maximin individual value
    equals half of it (a symmetric optimal policy splits it evenly across
    the mirrored starts); selfish_total is the equilibrium where the far
    prey never moves and the victim best-responds alone.
    """
    starts = _canonical_starts()
    optimal = float(np.mean([_dp_total(w, {}) for w in starts]))
    selfish = []
    for victim, world in enumerate(starts):
        own, other = _selfish_policy_value(world, victim, {})
        selfish.append(own + other)
    return RingOracle(
        optimal_total=optimal,
        maximin_individual=optimal / 2.0,
        selfish_total=float(np.mean(selfish)),
    )
