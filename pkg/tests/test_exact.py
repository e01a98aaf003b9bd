import numpy as np
import pytest

from d3c.exact import (
    ExactConfig,
    JointState,
    d3c_exact_step,
    ddt_mixed_loss,
    flow,
    grad_a_surrogate,
    mixed_grad_table,
    mixed_grads,
    run_exact,
    strategy_step,
)
from d3c.games import NashParadoxGame, PDGame, UnfairGame
from d3c.games.base import Game
from d3c.mixing import identity_mixing, init_mixing, uniform_mixing


def fd_grad_a(game, x, A, i, eps, active=None, h=1e-6):
    """Ambient central differences of ReLU(rate_i + eps) over row i."""
    out = np.zeros(game.n)
    for m in range(game.n):
        up, dn = A.copy(), A.copy()
        up[i, m] += h
        dn[i, m] -= h
        ru = max(ddt_mixed_loss(game, x, up, i, active) + eps, 0.0)
        rd = max(ddt_mixed_loss(game, x, dn, i, active) + eps, 0.0)
        out[m] = (ru - rd) / (2 * h)
    return out


class SoloQuadratic(Game):
    """Single-player helper: f = ||x||^2."""

    def __init__(self):
        self.n = 1
        self.dims = (3,)

    def losses(self, x):
        return np.array([float(x @ x)])

    def loss_grads(self, x):
        return (2.0 * np.asarray(x, dtype=float))[None, :]


def test_mixed_grads_identity_and_uniform():
    game = PDGame(2, 1.0)
    rng = np.random.default_rng(0)
    x = rng.standard_normal(game.dim)
    own = mixed_grads(game, x, identity_mixing(2))
    full = game.loss_grads(x)
    for i in range(2):
        np.testing.assert_allclose(own[i], full[i, game.block(i)])
    avg = mixed_grads(game, x, uniform_mixing(2))
    welfare = full.mean(axis=0)
    for i in range(2):
        np.testing.assert_allclose(avg[i], welfare[game.block(i)])


def test_mixed_grad_table_matches_fd():
    game = PDGame(3, 1.0)
    rng = np.random.default_rng(1)
    h = 1e-6
    for _ in range(10):
        x = rng.standard_normal(game.dim)
        A = rng.dirichlet(np.ones(3), size=3)
        table = mixed_grad_table(game, x, A)
        for k in range(game.dim):
            up, dn = x.copy(), x.copy()
            up[k] += h
            dn[k] -= h
            fd = (A.T @ game.losses(up) - A.T @ game.losses(dn)) / (2 * h)
            np.testing.assert_allclose(table[:, k], fd, rtol=1e-5, atol=1e-7)


def test_strategy_step_descends_pd():
    game = PDGame(3, 1.0)
    rng = np.random.default_rng(2)
    x = rng.standard_normal(game.dim)
    A = identity_mixing(3)
    for _ in range(200):
        x = strategy_step(game, x, A, 0.05)
    assert np.abs(x).max() < 1e-3  # selfish play reaches the Nash at the origin


def test_strategy_step_noop_at_critical_point():
    game = PDGame(2, 1.0)
    x0 = np.zeros(game.dim)  # own-gradients vanish at the origin
    np.testing.assert_array_equal(strategy_step(game, x0, identity_mixing(2), 0.1), x0)


def test_game1_selfish_reaches_origin():
    game = NashParadoxGame(0.5)
    x = np.array([0.9, 0.7])
    for _ in range(500):
        x = strategy_step(game, x, identity_mixing(2), 0.05)
    np.testing.assert_allclose(x, [0.0, 0.0], atol=1e-6)


def test_ddt_mixed_loss_cases():
    solo = SoloQuadratic()
    x = np.array([1.0, -2.0, 0.5])
    rate = ddt_mixed_loss(solo, x, np.eye(1), 0)
    assert rate == pytest.approx(-float((2 * x) @ (2 * x)))
    # critical point of the flow
    game = PDGame(2, 1.0)
    assert ddt_mixed_loss(game, np.zeros(game.dim), identity_mixing(2), 0) == 0.0


def test_ddt_matches_euler_step():
    game = PDGame(3, 1.0)
    rng = np.random.default_rng(3)
    dt = 1e-4
    for _ in range(10):
        x = rng.standard_normal(game.dim)
        A = rng.dirichlet(np.ones(3), size=3)
        x2 = strategy_step(game, x, A, dt)
        before = A.T @ game.losses(x)
        after = A.T @ game.losses(x2)
        for i in range(3):
            rate = ddt_mixed_loss(game, x, A, i)
            assert (after[i] - before[i]) / dt == pytest.approx(rate, abs=5e-2, rel=1e-2)


def test_grad_a_surrogate_zero_when_improving():
    game = PDGame(3, 1.0)
    rng = np.random.default_rng(4)
    found = 0
    for _ in range(50):
        x = rng.standard_normal(game.dim)
        A = rng.dirichlet(np.ones(3), size=3)
        for i in range(3):
            if ddt_mixed_loss(game, x, A, i) < -1e-9:
                np.testing.assert_array_equal(grad_a_surrogate(game, x, A, i, 0.0), np.zeros(3))
                found += 1
    assert found > 20


@pytest.mark.parametrize(
    "game,scale",
    [(PDGame(2, 1.0), 1.0), (PDGame(3, 1.0), 1.0), (NashParadoxGame(0.5), 0.4), (UnfairGame(), 1.0)],
)
def test_grad_a_surrogate_matches_fd(game, scale):
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(60):
        x = game.clip_strategies(rng.normal(scale=scale, size=game.dim))
        A = rng.dirichlet(np.ones(game.n), size=game.n)
        for i in range(game.n):
            rate = ddt_mixed_loss(game, x, A, i)
            for eps in (0.0, 50.0):
                if abs(rate + eps) < 1e-4:  # stay off the ReLU kink
                    continue
                g = grad_a_surrogate(game, x, A, i, eps)
                fd = fd_grad_a(game, x, A, i, eps)
                denom = max(1.0, float(np.abs(fd).max()))
                assert np.abs(g - fd).max() / denom < 1e-5
                if rate + eps > 0:
                    checked += 1
    assert checked > 20


def test_grad_a_surrogate_masked_matches_fd():
    game = PDGame(4, 1.0)
    rng = np.random.default_rng(6)
    active = np.array([False, True, True, True])
    checked = 0
    for _ in range(40):
        x = rng.uniform(0.05, 0.5, size=game.dim)
        A = rng.dirichlet(np.ones(4), size=4)
        for i in range(1, 4):
            for eps in (0.0, 100.0):
                rate = ddt_mixed_loss(game, x, A, i, active)
                if abs(rate + eps) < 1e-4:
                    continue
                g = grad_a_surrogate(game, x, A, i, eps, active)
                fd = fd_grad_a(game, x, A, i, eps, active)
                denom = max(1.0, float(np.abs(fd).max()))
                assert np.abs(g - fd).max() / denom < 1e-5
                if rate + eps > 0:
                    checked += 1
    assert checked > 20
    # frozen agents contribute no flow
    x = rng.uniform(0.05, 0.5, size=game.dim)
    A = rng.dirichlet(np.ones(4), size=4)
    xdot = flow(game, x, A, active)
    np.testing.assert_array_equal(xdot[game.block(0)], 0.0)


def test_fixed_point_at_social_optimum():
    game = PDGame(3, 1.0)
    x_opt = np.full(game.dim, 1.0 / 3.0)
    A = uniform_mixing(3)
    for i in range(3):
        np.testing.assert_allclose(grad_a_surrogate(game, x_opt, A, i, 0.0), np.zeros(3), atol=1e-12)
    state = JointState(params=x_opt, A=A)
    nxt = d3c_exact_step(game, state, ExactConfig(dt=0.05, eta_a=1.0))
    np.testing.assert_allclose(nxt.params, x_opt, atol=1e-12)
    np.testing.assert_allclose(nxt.A, A, atol=1e-12)


def test_improve_stay_leaves_mixing_unchanged():
    game = PDGame(2, 1.0)
    rng = np.random.default_rng(7)
    cfg = ExactConfig(dt=0.01, eta_a=2.0, nu=0.0, epsilon=0.0)
    found = 0
    for _ in range(50):
        x = rng.standard_normal(game.dim)
        A = init_mixing(2, 0.9)
        if all(ddt_mixed_loss(game, x, A, i) < -1e-6 for i in range(2)):
            nxt = d3c_exact_step(game, JointState(params=x, A=A), cfg)
            np.testing.assert_array_equal(nxt.A, A)
            found += 1
    assert found > 5


def test_run_exact_deterministic_and_budget_balanced():
    game = PDGame(3, 1.0)
    cfg = ExactConfig(dt=0.02, eta_a=1.0, epsilon=0.01, steps=200, log_every=10)
    rec1 = run_exact(game, cfg, lambda rng: rng.standard_normal(game.dim), seed=42, A0=init_mixing(3, 0.99))
    rec2 = run_exact(game, cfg, lambda rng: rng.standard_normal(game.dim), seed=42, A0=init_mixing(3, 0.99))
    np.testing.assert_array_equal(rec1.raw, rec2.raw)
    np.testing.assert_array_equal(rec1.a_entries, rec2.a_entries)
    totals_raw = rec1.raw.sum(axis=1)
    totals_mixed = rec1.mixed.sum(axis=1)
    assert np.all(np.abs(totals_raw - totals_mixed) <= 1e-9 * (1.0 + np.abs(totals_raw)))


def test_self_play_reduces_to_gradient_descent():
    game = PDGame(3, 1.0)
    cfg = ExactConfig(dt=0.05, eta_a=0.0, steps=100, log_every=1)
    rec = run_exact(game, cfg, lambda rng: rng.standard_normal(game.dim), seed=9)
    rng = np.random.default_rng(9)
    x = rng.standard_normal(game.dim)
    manual = [game.losses(x)]
    for _ in range(100):
        own = np.concatenate([game.loss_grads(x)[i, game.block(i)] for i in range(3)])
        x = x - 0.05 * own
        manual.append(game.losses(x))
    np.testing.assert_array_equal(rec.raw, np.array(manual))
    np.testing.assert_array_equal(rec.final_params, x)
