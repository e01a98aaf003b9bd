import numpy as np
import pytest

from d3c.games import NashParadoxGame, PDGame, TrafficGame, fig2_network
from d3c.mixing import init_mixing, uniform_mixing
from d3c.poa import (
    LocalSnapshot,
    PoaConfig,
    check_diag_dominance,
    composition_ratio,
    global_poa_closed,
    local_poa_egalitarian,
    local_poa_utilitarian,
    ratio_to_optimal,
    relative_attention,
    rho_additive,
)


def test_utilitarian_all_decreasing_is_one():
    snap = LocalSnapshot(np.array([1.0, 2.0]), np.array([-0.3, 0.0]), np.zeros(2))
    rho, rho_max = local_poa_utilitarian(snap, PoaConfig(dt=0.1))
    np.testing.assert_array_equal(rho, [1.0, 1.0])
    assert rho_max == 1.0


def test_utilitarian_hand_value():
    snap = LocalSnapshot(np.array([2.0]), np.array([1.0]), np.array([4.0]))
    rho, rho_max = local_poa_utilitarian(snap, PoaConfig(dt=0.1, mu_bar=2.0))
    assert rho_max == pytest.approx(1.15)


def test_utilitarian_rejects_nonpositive_losses():
    snap = LocalSnapshot(np.array([1.0, -0.5]), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        local_poa_utilitarian(snap, PoaConfig(dt=0.1))


def _tightness_oracle(kappa=2.0, x=-1.0, dt=0.01, grid=101):
    """Brute-force local PoA for f1 = x1 - k x2, f2 = x2 - k x1 along the
    per-player gradient segments x_i - tau_i * dt (own gradients are 1)."""
    taus = np.linspace(0.0, 1.0, grid)
    x1 = x - taus * dt
    x2 = x - taus * dt
    f1 = x1[:, None] - kappa * x2[None, :]
    f2 = x2[None, :] - kappa * x1[:, None]
    total = f1 + f2
    # player 1 picks tau1 (rows), player 2 tau2 (cols)
    br1 = f1.argmin(axis=0)
    br2 = f2.argmin(axis=1)
    nash_totals = [
        total[i, j]
        for i in range(grid)
        for j in range(grid)
        if br1[j] == i and br2[i] == j
    ]
    return max(nash_totals) / total.min()


def test_tightness_case_matches_line_search_oracle():
    # rates d/dt f_i = kappa - 1 = 1, losses f_i = 1 at x1 = x2 = -1
    snap = LocalSnapshot(np.array([1.0, 1.0]), np.array([1.0, 1.0]), np.array([1.0, 1.0]))
    _, bound = local_poa_utilitarian(snap, PoaConfig(dt=0.01))
    oracle = _tightness_oracle()
    assert bound == pytest.approx(1.01)
    assert abs(bound - oracle) < 1e-8


def test_utilitarian_bound_at_least_one_and_monotone():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        snap = LocalSnapshot(
            rng.uniform(0.1, 5.0, n), rng.normal(size=n), rng.uniform(0.0, 4.0, n)
        )
        cfg = PoaConfig(dt=0.05, mu_bar=float(rng.uniform(0.5, 100.0)))
        rho, rho_max = local_poa_utilitarian(snap, cfg)
        assert rho_max >= 1.0
        assert np.all(rho >= 1.0)
        # increasing any rate weakly increases the bound
        k = int(rng.integers(n))
        bumped = np.array(snap.loss_rates)
        bumped[k] += 0.5
        _, worse = local_poa_utilitarian(
            LocalSnapshot(snap.mixed_losses, bumped, snap.own_grad_sqnorms), cfg
        )
        assert worse >= rho_max - 1e-12
        # the bound is nonincreasing in mu_bar
        _, relaxed = local_poa_utilitarian(
            snap, PoaConfig(dt=0.05, mu_bar=cfg.mu_bar * 2.0)
        )
        assert relaxed <= rho_max + 1e-12


def test_egalitarian_values():
    snap = LocalSnapshot(np.array([1.0, 3.0]), np.array([0.0, 1.0]), np.array([1.0, 1.0]))
    val = local_poa_egalitarian(snap, max_loss_rate=1.0, cfg=PoaConfig(dt=0.1, mu_bar=2.0))
    assert val == pytest.approx(1.0 + 0.1 * (1.0 / 3.0 + 2.0 / 6.0))
    # max loss decreasing with mu_bar = inf gives exactly 1
    assert local_poa_egalitarian(snap, -0.5, PoaConfig(dt=0.1)) == 1.0
    # single agent: coincides with the utilitarian bound
    one = LocalSnapshot(np.array([2.0]), np.array([0.6]), np.array([4.0]))
    cfg = PoaConfig(dt=0.1, mu_bar=2.0)
    _, util = local_poa_utilitarian(one, cfg)
    assert local_poa_egalitarian(one, 0.6, cfg) == pytest.approx(util)


def test_rho_additive():
    assert rho_additive(-1.0, 0.0) == 0.0
    assert rho_additive(0.2, 0.0) == pytest.approx(0.2)
    assert rho_additive(-0.05, 0.1) == pytest.approx(0.05)
    # convex, nonnegative, piecewise linear in the rate
    rates = np.linspace(-2, 2, 81)
    vals = np.array([rho_additive(r, 0.3) for r in rates])
    assert np.all(vals >= 0.0)
    second = np.diff(vals, 2)
    assert np.all(second >= -1e-12)


def test_global_poa_closed():
    assert global_poa_closed(PDGame(10, 1.0)) == pytest.approx(10.0 / 9.0)
    assert global_poa_closed(TrafficGame(fig2_network(True))) == pytest.approx(80.0 / 65.0)
    assert global_poa_closed(NashParadoxGame(0.5)) == pytest.approx(4.0 / 3.0)
    class Bare:
        nash_total = None
        opt_total = 3.0
    assert global_poa_closed(Bare()) is None


def test_ratio_to_optimal():
    assert ratio_to_optimal(81.0, 81.0) == 1.0
    assert ratio_to_optimal(320.0, 260.0) == pytest.approx(80.0 / 65.0)
    assert ratio_to_optimal(90.0, 81.0) == pytest.approx(10.0 / 9.0)


def test_relative_attention():
    A = init_mixing(2, 0.99)
    assert relative_attention(A, 0, 1) == pytest.approx(np.log(99.0))
    assert relative_attention(uniform_mixing(3), 1, 2) == 0.0
    assert composition_ratio(init_mixing(2, 0.99), 0, 1) == pytest.approx(99.0)
    with pytest.raises(ValueError):
        relative_attention(A, 1, 1)


def test_check_diag_dominance():
    eye = [np.eye(3) for _ in range(3)]
    flags, mixed = check_diag_dominance(eye, uniform_mixing(3))
    assert all(flags) and mixed
    game = PDGame(3, 1.0)
    hessians = game.loss_hessians(np.zeros(game.dim))
    # scalar-agent contract expects n == dim, so use per-row blend on a
    # scalar reduction: PD Hessians are 2I, any stochastic blend is 2I
    flags, mixed = check_diag_dominance([2 * np.eye(3)] * 3, init_mixing(3, 0.8))
    assert all(flags) and mixed
    bad = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    flags, mixed = check_diag_dominance([bad, bad, bad], np.eye(3))
    assert not flags[0] and not mixed
