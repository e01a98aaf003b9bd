"""Analytic game suite: loss vectors, gradients, and closed forms."""

from d3c.games.base import Game, assert_grads_match_fd, fd_loss_grads
from d3c.games.bilinear import BilinearSimplexGame, bilinear_basin_fraction
from d3c.games.counterexamples import (
    Game1ClosedForms,
    NashParadoxGame,
    UnfairGame,
    game1_closed_forms,
    game1_losses,
    game2_losses,
)
from d3c.games.election import ElectionGame, election_build
from d3c.games.pd import PDGame, pd_build_c, pd_losses, pd_maverick_values
from d3c.games.traffic import (
    TrafficGame,
    TrafficNetwork,
    fig2_network,
    gen_braess,
    traffic_expected_commutes,
)

__all__ = [
    "BilinearSimplexGame",
    "ElectionGame",
    "Game",
    "Game1ClosedForms",
    "NashParadoxGame",
    "PDGame",
    "TrafficGame",
    "TrafficNetwork",
    "UnfairGame",
    "assert_grads_match_fd",
    "bilinear_basin_fraction",
    "election_build",
    "fd_loss_grads",
    "fig2_network",
    "game1_closed_forms",
    "game1_losses",
    "game2_losses",
    "gen_braess",
    "pd_build_c",
    "pd_losses",
    "pd_maverick_values",
    "traffic_expected_commutes",
]
