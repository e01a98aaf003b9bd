import numpy as np
import pytest
from scipy import stats as sps

from d3c.rl.ring import (
    CCW,
    CW,
    EPISODE_LEN,
    STAY,
    RingWorld,
    observation,
    predator_plans,
    ring_distance,
    ring_optimal_return,
    ring_reset,
    ring_step,
    step_with_plan,
)


def test_distances_sum_to_ring_size():
    for a in range(6):
        for b in range(6):
            if a != b:
                ccw = (b - a) % 6
                cw = (a - b) % 6
                assert ccw + cw == 6
                assert ring_distance(a, b) == min(ccw, cw)


def test_reset_geometry():
    rng = np.random.default_rng(0)
    for close in (0, 1):
        for _ in range(50):
            world = ring_reset(close, rng)
            prey = world.prey
            assert ring_distance(prey[0], prey[1]) == 1  # adjacent
            assert ring_distance(world.predator, prey[close]) == 2  # one gap cell
            assert ring_distance(world.predator, prey[1 - close]) == 3
            assert len({world.predator, *prey}) == 3


def test_observation_antisymmetric_under_reflection():
    world = RingWorld(predator=4, prey=(0, 1))
    mirrored = RingWorld(predator=2, prey=(0, 5))
    np.testing.assert_array_equal(observation(world), -observation(mirrored))


def test_stationary_prey_unpenalized_when_far():
    world = RingWorld(predator=3, prey=(0, 1))
    nxt, rewards = step_with_plan(world, (STAY, STAY), plan_target=2)
    assert rewards[0] == 0.0  # predator ended at distance 2
    assert rewards[1] == pytest.approx(-1.0)  # prey 1 adjacent to cell 2


def test_move_and_capture_costs_stack():
    # prey 0 walks next to the predator: move cost plus capture
    world = RingWorld(predator=2, prey=(0, 5))
    nxt, rewards = step_with_plan(world, (CCW, STAY), plan_target=1)
    assert nxt.prey[0] == 1
    assert rewards[0] == pytest.approx(-1.01)


def test_blocked_move_still_costs():
    world = RingWorld(predator=4, prey=(0, 1))
    # prey 0 tries to enter prey 1's cell while prey 1 stays
    nxt, rewards = step_with_plan(world, (CCW, STAY), plan_target=5)
    assert nxt.prey[0] == 0
    assert rewards[0] == pytest.approx(-1.01)  # cost charged, then caught at 5


def test_predator_stays_when_adjacent():
    world = RingWorld(predator=1, prey=(0, 3))
    assert predator_plans(world) == [(1.0, 1)]


def test_swap_through_is_allowed():
    world = RingWorld(predator=4, prey=(0, 1))
    nxt, _ = step_with_plan(world, (CCW, CW), plan_target=5)
    assert nxt.prey == (1, 0)


def test_blocked_against_settled_prey_chains():
    # prey 1 tries to move onto the predator (blocked); prey 0 then may not
    # enter prey 1's settled cell
    world = RingWorld(predator=2, prey=(0, 1))
    nxt, rewards = step_with_plan(world, (CCW, CCW), plan_target=2)
    assert nxt.prey == (0, 1)
    assert rewards[0] == pytest.approx(-0.01)  # blocked move still costs; not adjacent
    assert rewards[1] == pytest.approx(-1.01)  # blocked move and adjacent to the predator


def test_equidistant_tiebreak_is_even():
    rng = np.random.default_rng(7)
    world = RingWorld(predator=0, prey=(2, 4))  # both prey at distance 2
    targets = {1: 0, 5: 0}
    trials = 10_000
    for _ in range(trials):
        nxt, _ = ring_step(world, (STAY, STAY), rng)
        targets[nxt.predator] += 1
    assert set(targets) == {1, 5}
    assert sps.binomtest(targets[1], trials).pvalue > 0.01


def test_episode_terminates():
    rng = np.random.default_rng(1)
    world = ring_reset(0, rng)
    for _ in range(EPISODE_LEN):
        world, _ = ring_step(world, (STAY, STAY), rng)
    assert world.done
    with pytest.raises(ValueError):
        ring_step(world, (STAY, STAY), rng)


def test_oracle_values():
    oracle = ring_optimal_return()
    assert oracle.optimal_total == pytest.approx(-0.1, abs=1e-12)
    assert oracle.maximin_individual == pytest.approx(-0.05, abs=1e-12)
    assert oracle.selfish_total == pytest.approx(-3.04, abs=1e-9)


def test_frozen_prey_value():
    # both prey freeze: the cornered one is caught every step
    rng = np.random.default_rng(2)
    totals = []
    for _ in range(20):
        world = ring_reset(0, rng)
        total = 0.0
        for _ in range(EPISODE_LEN):
            world, rewards = ring_step(world, (STAY, STAY), rng)
            total += rewards.sum()
        totals.append(total)
    assert max(totals) <= -5.0


def test_determinism_given_seed():
    def roll(seed):
        rng = np.random.default_rng(seed)
        world = ring_reset(0, rng)
        trace = []
        for _ in range(EPISODE_LEN):
            world, rewards = ring_step(world, (CCW, CCW), rng)
            trace.append((world.predator, world.prey, tuple(rewards)))
        return trace

    assert roll(123) == roll(123)
