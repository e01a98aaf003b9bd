import numpy as np
import pytest

from d3c.exact import mixed_jacobian
from d3c.games import (
    BilinearSimplexGame,
    ElectionGame,
    assert_grads_match_fd,
    bilinear_basin_fraction,
    election_build,
)
from d3c.games.bilinear import bilinear_losses, cooperative_corner_values
from d3c.mixing import uniform_mixing


def test_bilinear_corner_values():
    game = BilinearSimplexGame(0.0, -0.75, -1.0, 0.0)
    big = 60.0
    corner_10 = np.array([big, 0.0, 0.0, big])  # p -> 1, q -> 0
    corner_01 = np.array([0.0, big, big, 0.0])
    assert bilinear_losses(corner_10, game).sum() == pytest.approx(-0.75, abs=1e-8)
    assert bilinear_losses(corner_01, game).sum() == pytest.approx(-1.0, abs=1e-8)
    assert cooperative_corner_values(0.0, -0.75, -1.0, 0.0) == (-0.75, -1.0)


def test_bilinear_split_sums_to_payoff():
    game = BilinearSimplexGame(0.2, -0.75, -1.0, 0.4)
    np.testing.assert_allclose(game.B[0] + game.B[1], game.payoff)


def test_bilinear_gradients_match_fd():
    assert_grads_match_fd(BilinearSimplexGame(0.0, -0.75, -1.0, 0.0), points=40, seed=0)


def test_symmetric_basin_is_even():
    frac = bilinear_basin_fraction(0.0, -1.0, -1.0, 0.0, 4000, np.random.default_rng(2))
    assert abs(frac - 0.5) < 0.03


def test_asymmetric_basin_fraction():
    frac = bilinear_basin_fraction(0.0, -0.75, -1.0, 0.0, 4000, np.random.default_rng(3))
    assert abs(frac - 3.0 / 7.0) < 0.04


def test_election_zero_sum_identity():
    game = election_build()
    rng = np.random.default_rng(4)
    for _ in range(100):
        x = rng.normal(scale=3.0, size=4)
        assert game.zero_sum_terms(x).sum() == pytest.approx(0.0, abs=1e-12)
        # the inter-party part of the total vanishes: the total equals the PD part
        pd_only = ElectionGame(w_pd=game.w_pd, kz=0.0, c=game.c)
        assert game.losses(x).sum() == pytest.approx(pd_only.losses(x).sum())


def test_election_gradients_match_fd():
    assert_grads_match_fd(ElectionGame(), points=50, seed=5)


def test_election_spectrum_under_mixing():
    game = ElectionGame(w_pd=1.0, kz=0.25)
    rng = np.random.default_rng(6)
    x = rng.standard_normal(4)
    # full welfare mixing: symmetric Jacobian, purely real spectrum
    J = mixed_jacobian(game, x, uniform_mixing(4))
    np.testing.assert_allclose(J, J.T, atol=1e-12)
    assert np.abs(np.linalg.eigvals(J).imag).max() == 0.0
    # perfect team blocks: the zero-sum coupling survives as a complex pair
    blocks = np.array(
        [[0.5, 0.5, 0, 0], [0.5, 0.5, 0, 0], [0, 0, 0.5, 0.5], [0, 0, 0.5, 0.5]]
    )
    eig = np.linalg.eigvals(mixed_jacobian(game, x, blocks))
    assert np.abs(eig.imag).max() == pytest.approx(2 * game.kz)
    assert np.allclose(eig.real, 2 * game.w_pd)


def test_election_hessians_match_fd():
    game = ElectionGame()
    rng = np.random.default_rng(7)
    h = 1e-5
    for _ in range(5):
        x = rng.standard_normal(4)
        H = game.loss_hessians(x)
        for j in range(4):
            for k in range(4):
                up, dn = x.copy(), x.copy()
                up[k] += h
                dn[k] -= h
                fd = (game.loss_grads(up)[j] - game.loss_grads(dn)[j]) / (2 * h)
                np.testing.assert_allclose(H[j][:, k], fd, atol=1e-6)
