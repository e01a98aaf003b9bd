"""Seeded experiment runner: presets, per-run dispatch, aggregation, emitters.

Every experiment maps (config, master seed) to byte-identical CSV/JSON
outputs. Run i uses seed = master ^ i; workers only parallelize across
runs and aggregation folds in run-id order, so the worker count never
changes the bytes.
"""

from __future__ import annotations

import json
import math
import subprocess
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from d3c.bandit import BanditAgentState, BanditConfig, BanditLearner, init_agent, run_bandit, start_trial
from d3c.config import ExperimentConfig, emit_config
from d3c.exact import ExactConfig, run_exact
from d3c.games import (
    ElectionGame,
    NashParadoxGame,
    PDGame,
    TrafficGame,
    UnfairGame,
    bilinear_basin_fraction,
    fig2_network,
    gen_braess,
)
from d3c.mixing import LogitBounds, identity_mixing, init_mixing, uniform_mixing
from d3c.records import RunRecord
from d3c.rl import ReinforceConfig, marl_learner

SELF_WEIGHT = 0.99  # A0_ii for every d3c preset


def preset(experiment: str) -> ExperimentConfig:
    """Reference configuration for a subcommand, desk-scaled run counts."""
    trust_bandit_row = {
        "eta_a": 1.0, "delta": 1.0, "nu": 0.0, "tau_min": 10, "tau_max": 20,
        "a0": 0.99, "epsilon": 0.0, "l": -5.0, "h": 5.0,
    }
    coins_bandit_row = {
        "eta_a": 0.001, "delta": 0.1, "nu": 1e-06, "tau_min": 5, "tau_max": 10,
        "a0": 0.99, "epsilon": 100.0, "l": -5.0, "h": 5.0,
    }
    rl_defaults = {"policy_lr": 0.1, "value_lr": 0.1, "batch": 10}
    presets = {
        "pd": ExperimentConfig(
            experiment="pd", runs=100, steps=1500, log_every=15,
            game={"n": 10, "c": 1.0, "mavericks": 0},
            exact={"dt": 0.02, "eta_a": 1.0, "nu": 0.01, "epsilon": 0.01, "l": -5.0, "h": 5.0},
        ),
        "traffic": ExperimentConfig(
            experiment="traffic", runs=100, steps=3000, log_every=30,
            game={"shortcut": True},
            exact={"dt": 0.01, "eta_a": 1.0, "nu": 0.0, "epsilon": 0.1, "l": -5.0, "h": 5.0},
        ),
        "braess-batch": ExperimentConfig(
            experiment="braess-batch", runs=100, steps=3000, log_every=30,
            game={"delta": 20.0},
            exact={"dt": 0.01, "eta_a": 1.0, "nu": 0.0, "epsilon": 0.1, "l": -5.0, "h": 5.0},
        ),
        "game1": ExperimentConfig(
            experiment="game1", runs=100, steps=2000, log_every=20,
            game={"kappa": 0.5},
            exact={"dt": 0.01, "eta_a": 1.0, "nu": 0.0, "epsilon": 0.01, "l": -5.0, "h": 5.0},
        ),
        "game2": ExperimentConfig(
            experiment="game2", runs=100, steps=5000, log_every=50,
            game={},
            exact={"dt": 0.001, "eta_a": 0.03, "nu": 0.0, "epsilon": 0.0, "l": -5.0, "h": 5.0},
        ),
        "election": ExperimentConfig(
            experiment="election", runs=100, steps=2000, log_every=20,
            game={"w_pd": 1.0, "kz": 0.25, "c": 1.0},
            exact={"dt": 0.01, "eta_a": 1.0, "nu": 0.05, "epsilon": 0.0, "l": -5.0, "h": 5.0},
        ),
        "bilinear": ExperimentConfig(
            experiment="bilinear", runs=1, steps=6000,
            game={"a": 0.0, "b": -0.75, "c": -1.0, "d": 0.0, "trials": 10000, "dt": 0.02},
        ),
        "trust": ExperimentConfig(
            experiment="trust", algo="d3c-bandit", runs=100, steps=20000, log_every=100,
            bandit=dict(trust_bandit_row), rl=dict(rl_defaults),
        ),
        "coins": ExperimentConfig(
            experiment="coins", algo="d3c-bandit", runs=4, steps=60, log_every=1,
            bandit=dict(coins_bandit_row), rl={"policy_lr": 0.1, "value_lr": 0.1, "batch": 1},
        ),
    }
    if experiment not in presets:
        raise ValueError(f"no preset for experiment {experiment!r}")
    return presets[experiment]


def _exact_config(cfg: ExperimentConfig, eta_a_override: float | None = None) -> ExactConfig:
    e = cfg.exact
    return ExactConfig(
        dt=float(e.get("dt", 0.01)),
        eta_a=float(e.get("eta_a", 1.0)) if eta_a_override is None else eta_a_override,
        nu=float(e.get("nu", 0.0)),
        epsilon=float(e.get("epsilon", 0.0)),
        steps=cfg.steps,
        bounds=LogitBounds(float(e.get("l", -5.0)), float(e.get("h", 5.0))),
        log_every=cfg.log_every,
    )


def _bandit_config(cfg: ExperimentConfig) -> BanditConfig:
    b = cfg.bandit
    return BanditConfig(
        eta_a=float(b.get("eta_a", 1.0)),
        delta=float(b.get("delta", 1.0)),
        nu=float(b.get("nu", 0.0)),
        tau_min=int(b.get("tau_min", 10)),
        tau_max=int(b.get("tau_max", 20)),
        a0=float(b.get("a0", 0.99)),
        epsilon=float(b.get("epsilon", 0.0)),
        bounds=LogitBounds(float(b.get("l", -5.0)), float(b.get("h", 5.0))),
    )


def _build_exact_game(cfg: ExperimentConfig, rng: np.random.Generator):
    """(game, init_sampler, active mask) for the exact-gradient experiments."""
    exp, g = cfg.experiment, cfg.game
    if exp == "pd":
        n = int(g.get("n", 10))
        game = PDGame(n, float(g.get("c", 1.0)))
        m = int(g.get("mavericks", 0))
        active = None
        if m:
            active = np.array([False] * m + [True] * (n - m))

        def sampler(r, game=game, m=m):
            x = r.standard_normal(game.dim)
            for k in range(m):  # frozen defectors hold the all-defect Nash
                x[game.block(k)] = 0.0
            return x

        return game, sampler, active
    if exp == "traffic":
        game = TrafficGame(fig2_network(bool(g.get("shortcut", True))))
        return game, lambda r: r.standard_normal(game.dim), None
    if exp == "braess-batch":
        net = gen_braess(float(g.get("delta", 20.0)), rng)
        game = TrafficGame(net)
        return game, lambda r: r.standard_normal(game.dim), None
    if exp == "game1":
        game = NashParadoxGame(float(g.get("kappa", 0.5)))
        return game, lambda r: r.uniform(0.0, 1.0, size=2), None
    if exp == "game2":
        game = UnfairGame()
        # canonical inequity demo start: fixed magnitudes, random signs
        return game, lambda r: np.array([1.1, 0.22]) * r.choice([-1.0, 1.0], size=2), None
    if exp == "election":
        game = ElectionGame(
            w_pd=float(g.get("w_pd", 1.0)), kz=float(g.get("kz", 0.25)), c=float(g.get("c", 1.0))
        )
        return game, lambda r: r.standard_normal(4), None
    raise ValueError(f"{exp} is not an exact-gradient experiment")


class FixedMixingLearner(BanditLearner):
    """Baseline wrapper: ignore the perturbed rows, mix with a fixed matrix."""

    def __init__(self, inner, matrix):
        self.inner = inner
        self.matrix = matrix
        self.n = inner.n

    def step(self, perturbed):
        return self.inner.step(self.matrix)


def run_one(cfg: ExperimentConfig, run_id: int) -> RunRecord:
    """One seeded run; the callable mapped across workers."""
    seed = cfg.seed ^ run_id
    rng = np.random.default_rng(seed)
    if cfg.experiment in ("trust", "coins"):
        return _run_bandit_once(cfg, run_id, rng)
    game, sampler, active = _build_exact_game(cfg, rng)
    if cfg.algo == "gd-baseline":
        A0, exact_cfg = identity_mixing(game.n), _exact_config(cfg, eta_a_override=0.0)
    elif cfg.algo == "cooperative":
        A0, exact_cfg = uniform_mixing(game.n), _exact_config(cfg, eta_a_override=0.0)
    elif cfg.algo == "d3c-exact":
        A0, exact_cfg = init_mixing(game.n, SELF_WEIGHT), _exact_config(cfg)
    else:
        raise ValueError(f"{cfg.algo} is not available for {cfg.experiment}")
    # strategy init consumes the same stream that generated the game, so
    # paired algorithms see identical draws under the same master seed
    return run_exact(game, exact_cfg, sampler, seed=seed, A0=A0, active=active, run_id=run_id)


def _run_bandit_once(cfg: ExperimentConfig, run_id: int, rng: np.random.Generator) -> RunRecord:
    env_kind = "ring" if cfg.experiment == "trust" else "coins"
    rl_cfg = ReinforceConfig(
        policy_lr=float(cfg.rl.get("policy_lr", 0.1)),
        value_lr=float(cfg.rl.get("value_lr", 0.1)),
        batch_size=int(cfg.rl.get("batch", 10)),
    )
    bandit_cfg = _bandit_config(cfg)
    learner = marl_learner(env_kind, rl_cfg, rng.spawn(1)[0])
    n = learner.n
    if cfg.algo == "d3c-bandit":
        agents = [init_agent(k, n, bandit_cfg, rng) for k in range(n)]
        return run_bandit(agents, learner, bandit_cfg, cfg.steps, rng, run_id=run_id, log_every=cfg.log_every)
    if cfg.algo in ("gd-baseline", "cooperative"):
        fixed = identity_mixing(n) if cfg.algo == "gd-baseline" else uniform_mixing(n)
        frozen = BanditConfig(
            eta_a=0.0, delta=1e-12, nu=0.0,
            tau_min=bandit_cfg.tau_min, tau_max=bandit_cfg.tau_max,
            a0=bandit_cfg.a0, epsilon=0.0, bounds=bandit_cfg.bounds,
        )
        agents = []
        for k in range(n):
            trial = start_trial(fixed[k], frozen, step=0, g_mean=0.0, rng=rng)
            agents.append(BanditAgentState(owner=k, row=fixed[k].copy(), trial=trial, g_mean=0.0))
        wrapped = FixedMixingLearner(learner, fixed)
        return run_bandit(agents, wrapped, frozen, cfg.steps, rng, run_id=run_id, log_every=cfg.log_every)
    raise ValueError(f"{cfg.algo} is not available for {cfg.experiment}")


def run_records(cfg: ExperimentConfig) -> list[RunRecord]:
    """All runs, in run-id order, optionally across a worker pool."""
    ids = list(range(cfg.runs))
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(run_one, [cfg] * len(ids), ids))
    else:
        records = [run_one(cfg, i) for i in ids]
    return records


# ---------------------------------------------------------------------------
# Aggregation and file emitters


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    return repr(v)


def emit_csv(records: list[RunRecord], path) -> None:
    """One CSV of raw per-step rows for all runs, header included."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if records:
        header = records[0].column_names()
    else:
        header = ["run", "step"]
    lines = [",".join(header)]
    for rec in records:
        for row in rec.rows():
            lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _clean(x: float):
    return None if (isinstance(x, float) and math.isnan(x)) else x


def _metric_summary(steps: np.ndarray, series: np.ndarray) -> dict:
    """Per-step mean/median/std across runs plus final-step values."""
    mean = np.nanmean(series, axis=0)
    median = np.nanmedian(series, axis=0)
    std = np.nanstd(series, axis=0)
    return {
        "steps": [int(s) for s in steps],
        "mean": [_clean(float(v)) for v in mean],
        "median": [_clean(float(v)) for v in median],
        "std": [_clean(float(v)) for v in std],
        "final_mean": _clean(float(mean[-1])),
        "final_median": _clean(float(median[-1])),
        "final_std": _clean(float(std[-1])),
    }


def summarize(records: list[RunRecord], cfg: ExperimentConfig) -> dict:
    steps = records[0].steps
    total_raw = np.stack([r.raw.sum(axis=1) for r in records])
    metrics = {"total_raw": _metric_summary(steps, total_raw)}
    ratio = np.stack([r.ratio for r in records])
    if not np.all(np.isnan(ratio)):
        metrics["ratio_to_opt"] = _metric_summary(steps, ratio)
    rho_max = np.stack([r.rho_max for r in records])
    if not np.all(np.isnan(rho_max)):
        metrics["rho_max"] = _metric_summary(steps, rho_max)
    attention = np.stack([r.attention.mean(axis=1) for r in records])
    metrics["attention_mean"] = _metric_summary(steps, attention)
    return {
        "config": {
            line.split(" = ")[0]: line.split(" = ", 1)[1]
            for line in emit_config(cfg).strip().splitlines()
        },
        "git": _git_describe(),
        "n_agents": records[0].n_agents,
        "metrics": metrics,
    }


def _git_describe() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=10,
        )
        return out.stdout.strip() or "unknown"
    except Exception:
        return "unknown"


def emit_summary(records: list[RunRecord], cfg: ExperimentConfig, path) -> dict:
    summary = summarize(records, cfg)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(summary, indent=2, sort_keys=True, allow_nan=False) + "\n")
    return summary


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run all seeds, write <out_dir>/<experiment>-<algo>.{csv,json}."""
    if cfg.experiment == "bilinear":
        return run_bilinear(cfg)
    records = run_records(cfg)
    stem = f"{cfg.experiment}-{cfg.algo}"
    out = Path(cfg.out_dir)
    emit_csv(records, out / f"{stem}.csv")
    summary = emit_summary(records, cfg, out / f"{stem}.json")
    return summary


def run_bilinear(cfg: ExperimentConfig) -> dict:
    """Basin-of-attraction analysis; writes the summary JSON only."""
    g = cfg.game
    rng = np.random.default_rng(cfg.seed)
    fraction = bilinear_basin_fraction(
        float(g.get("a", 0.0)),
        float(g.get("b", -0.75)),
        float(g.get("c", -1.0)),
        float(g.get("d", 0.0)),
        trials=int(g.get("trials", 10000)),
        rng=rng,
        dt=float(g.get("dt", 0.02)),
        steps=cfg.steps,
    )
    summary = {
        "config": {
            line.split(" = ")[0]: line.split(" = ", 1)[1]
            for line in emit_config(cfg).strip().splitlines()
        },
        "git": _git_describe(),
        "metrics": {"basin_fraction": fraction, "target": 3.0 / 7.0},
    }
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "bilinear.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary
