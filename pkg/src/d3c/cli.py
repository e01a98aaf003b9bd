"""Experiment command line.

One subcommand per experiment, each preloaded with its reference
hyperparameters; `gradcheck` runs the
finite-difference gates and fails nonzero; `reciprocity` runs the
synchrony analysis on a recorded attention CSV.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from d3c.config import ALGOS, ExperimentConfig, parse_config
from d3c.exact import ddt_mixed_loss, grad_a_surrogate
from d3c.experiments import preset, run_experiment
from d3c.games import (
    ElectionGame,
    NashParadoxGame,
    PDGame,
    TrafficGame,
    UnfairGame,
    assert_grads_match_fd,
    fig2_network,
)
from d3c.stats import cointegration_coeff, harmonic_mean_p, permutation_pvalue

EXPERIMENT_FLAGS = {
    "pd": [("--n", int, "n"), ("--c", float, "c"), ("--mavericks", int, "mavericks")],
    "traffic": [("--no-shortcut", "store_false", "shortcut")],
    "braess-batch": [("--delta", float, "delta")],
    "game1": [("--kappa", float, "kappa")],
    "game2": [],
    "election": [("--w-pd", float, "w_pd"), ("--kz", float, "kz")],
    "bilinear": [
        ("--a", float, "a"), ("--b", float, "b"), ("--c", float, "c"),
        ("--d", float, "d"), ("--trials", int, "trials"),
    ],
    "trust": [],
    "coins": [],
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algo", choices=ALGOS, default=None)
    parser.add_argument("--runs", type=int, default=None)
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--log-every", type=int, default=None)
    parser.add_argument("--out-dir", default=None)
    parser.add_argument("--config", default=None, help="config file; overrides the preset")
    parser.add_argument("--full-scale", action="store_true", help="use 1000 runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="d3c", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, flags in EXPERIMENT_FLAGS.items():
        p = sub.add_parser(name)
        _add_common(p)
        for flag, kind, dest in flags:
            if kind == "store_false":
                p.add_argument(flag, action="store_false", dest=f"game_{dest}", default=None)
            else:
                p.add_argument(flag, type=kind, dest=f"game_{dest}", default=None)
    g = sub.add_parser("gradcheck")
    g.add_argument("--points", type=int, default=25)
    g.add_argument("--seed", type=int, default=0)
    r = sub.add_parser("reciprocity")
    r.add_argument("--csv", required=True)
    r.add_argument("--resamples", type=int, default=499)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", default=None)
    return parser


def _config_from_args(args) -> ExperimentConfig:
    if args.config:
        cfg = parse_config(Path(args.config).read_text())
        if cfg.experiment != args.command:
            raise SystemExit(f"config is for {cfg.experiment!r}, not {args.command!r}")
    else:
        cfg = preset(args.command)
    updates = {}
    for field in ("algo", "runs", "steps", "seed", "workers", "out_dir"):
        value = getattr(args, field, None)
        if value is not None:
            updates[field] = value
    if args.seed is None and "D3C_SEED" in os.environ:
        updates["seed"] = int(os.environ["D3C_SEED"])
    if getattr(args, "log_every", None) is not None:
        updates["log_every"] = args.log_every
    if args.full_scale:
        updates["runs"] = 1000
    game = dict(cfg.game)
    for key, value in vars(args).items():
        if key.startswith("game_") and value is not None:
            game[key[len("game_"):]] = value
    updates["game"] = game
    return ExperimentConfig(**{**cfg.__dict__, **updates})


def run_gradcheck(points: int, seed: int) -> int:
    """Finite-difference gates for every analytic game and for the mixing
    surrogate gradient; prints one line per gate."""
    failures = 0
    games = [
        ("pd-n3", PDGame(3, 1.0), 1.0),
        ("pd-n5", PDGame(5, 1.0), 1.0),
        ("game1", NashParadoxGame(0.5), 0.4),
        ("game2", UnfairGame(), 1.0),
        ("traffic", TrafficGame(fig2_network(True)), 1.0),
        ("traffic-2road", TrafficGame(fig2_network(False)), 1.0),
        ("election", ElectionGame(), 1.0),
    ]
    for name, game, scale in games:
        try:
            assert_grads_match_fd(game, points=points, seed=seed, scale=scale)
            print(f"gradcheck {name}: ok")
        except AssertionError as err:
            failures += 1
            print(f"gradcheck {name}: FAIL ({err})")
    rng = np.random.default_rng(seed)
    for name, game in [("pd-n2", PDGame(2, 1.0)), ("pd-n3", PDGame(3, 1.0)), ("game1", NashParadoxGame(0.5)), ("game2", UnfairGame())]:
        worst = 0.0
        for _ in range(points):
            x = game.clip_strategies(rng.standard_normal(game.dim))
            A = rng.dirichlet(np.ones(game.n), size=game.n)
            for i in range(game.n):
                for eps in (0.0, 50.0):
                    rate = ddt_mixed_loss(game, x, A, i)
                    if abs(rate + eps) < 1e-4:
                        continue
                    g = grad_a_surrogate(game, x, A, i, eps)
                    fd = _fd_surrogate(game, x, A, i, eps)
                    denom = max(1.0, float(np.abs(fd).max()))
                    worst = max(worst, float(np.abs(g - fd).max()) / denom)
        status = "ok" if worst < 1e-5 else "FAIL"
        failures += status == "FAIL"
        print(f"gradcheck surrogate {name}: {status} (worst rel err {worst:.2e})")
    return 1 if failures else 0


def _fd_surrogate(game, x, A, i, eps, h=1e-6):
    out = np.zeros(game.n)
    for m in range(game.n):
        up, dn = A.copy(), A.copy()
        up[i, m] += h
        dn[i, m] -= h
        ru = max(ddt_mixed_loss(game, x, up, i) + eps, 0.0)
        rd = max(ddt_mixed_loss(game, x, dn, i) + eps, 0.0)
        out[m] = (ru - rd) / (2 * h)
    return out


def run_reciprocity(csv_path: str, resamples: int, seed: int, out: str | None) -> int:
    """Difference-then-correlate synchrony between per-agent attention
    trajectories, one coefficient per run, pooled by harmonic mean p."""
    rows = Path(csv_path).read_text().strip().splitlines()
    header = rows[0].split(",")
    attn_cols = [k for k, name in enumerate(header) if name.startswith("attention_")]
    run_col = header.index("run")
    if len(attn_cols) < 2:
        print("reciprocity: need at least two attention columns")
        return 1
    by_run: dict[int, list[list[float]]] = {}
    for line in rows[1:]:
        parts = line.split(",")
        by_run.setdefault(int(parts[run_col]), []).append([float(parts[k]) for k in attn_cols])
    rng = np.random.default_rng(seed)
    coeffs, pvals = [], []
    for run_id in sorted(by_run):
        series = np.array(by_run[run_id])
        t1, t2 = series[:, 0], series[:, 1]
        if np.std(np.diff(t1)) == 0.0 or np.std(np.diff(t2)) == 0.0:
            continue  # attention never moved in this run
        coeffs.append(cointegration_coeff(t1, t2))
        pvals.append(permutation_pvalue(t1, t2, resamples, rng))
    if not coeffs:
        print("reciprocity: no runs with moving attention trajectories")
        return 1
    result = {
        "coefficients": coeffs,
        "pvalues": pvals,
        "harmonic_mean_p": harmonic_mean_p(pvals),
    }
    text = json.dumps(result, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    print(f"reciprocity: {len(coeffs)} runs, coeff range "
          f"[{min(coeffs):.3f}, {max(coeffs):.3f}], harmonic mean p = {result['harmonic_mean_p']:.4f}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "gradcheck":
        return run_gradcheck(args.points, args.seed)
    if args.command == "reciprocity":
        return run_reciprocity(args.csv, args.resamples, args.seed, args.out)
    cfg = _config_from_args(args)
    summary = run_experiment(cfg)
    metrics = summary["metrics"]
    print(f"{cfg.experiment} [{cfg.algo}] runs={cfg.runs} steps={cfg.steps} seed={cfg.seed}")
    if "basin_fraction" in metrics:
        print(f"  basin fraction = {metrics['basin_fraction']:.4f} (target {metrics['target']:.4f})")
    else:
        for name, stats in metrics.items():
            final = stats["final_mean"]
            if final is not None:
                print(f"  final {name}: mean {final:.6g} median {stats['final_median']:.6g}")
    print(f"  outputs in {cfg.out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
