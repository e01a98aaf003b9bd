"""Experiment configuration: typed record plus a flat text format.

The on-disk format is human-diffable `key = value` lines with dotted
sections (`game.n = 10`, `exact.dt = 0.02`). Types round-trip losslessly:
ints stay ints, floats always carry a decimal point or exponent, booleans
are `true`/`false`, everything else is a bare string.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

EXPERIMENTS = (
    "pd",
    "traffic",
    "braess-batch",
    "game1",
    "game2",
    "election",
    "bilinear",
    "trust",
    "coins",
)

ALGOS = ("gd-baseline", "d3c-exact", "d3c-bandit", "cooperative")


@dataclass
class ExperimentConfig:
    experiment: str
    algo: str = "d3c-exact"
    runs: int = 100
    steps: int = 1000
    seed: int = 0
    workers: int = 1
    log_every: int = 1
    out_dir: str = "results"
    game: dict = field(default_factory=dict)
    exact: dict = field(default_factory=dict)
    bandit: dict = field(default_factory=dict)
    rl: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment: unknown id {self.experiment!r}")
        if self.algo not in ALGOS:
            raise ConfigError(f"algo: unknown algorithm {self.algo!r}")
        if self.runs < 1:
            raise ConfigError("runs: must be at least 1")
        if self.steps < 1:
            raise ConfigError("steps: must be at least 1")
        if self.log_every < 1:
            raise ConfigError("log_every: must be at least 1")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


_SECTIONS = ("game", "exact", "bandit", "rl")


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return repr(value)
    if isinstance(value, float):
        text = repr(value)
        if not any(ch in text for ch in ".eE") and text not in ("inf", "-inf", "nan"):
            text += ".0"
        return text
    return str(value)


def _parse_value(text: str):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def emit_config(cfg: ExperimentConfig) -> str:
    """Flat, sorted, lossless text rendering of a config."""
    data = asdict(cfg)
    lines = []
    for key in sorted(data):
        if key in _SECTIONS:
            for sub in sorted(data[key]):
                lines.append(f"{key}.{sub} = {_format_value(data[key][sub])}")
        else:
            lines.append(f"{key} = {_format_value(data[key])}")
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> ExperimentConfig:
    flat: dict[str, object] = {}
    sections: dict[str, dict] = {name: {} for name in _SECTIONS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        parsed = _parse_value(value)
        if "." in key:
            section, sub = key.split(".", 1)
            if section not in sections:
                raise ConfigError(f"{key}: unknown section {section!r}")
            sections[section][sub] = parsed
        else:
            flat[key] = parsed
    if "experiment" not in flat:
        raise ConfigError("experiment: missing required field")
    try:
        return ExperimentConfig(
            experiment=str(flat["experiment"]),
            algo=str(flat.get("algo", "d3c-exact")),
            runs=int(flat.get("runs", 100)),
            steps=int(flat.get("steps", 1000)),
            seed=int(flat.get("seed", 0)),
            workers=int(flat.get("workers", 1)),
            log_every=int(flat.get("log_every", 1)),
            out_dir=str(flat.get("out_dir", "results")),
            game=sections["game"],
            exact=sections["exact"],
            bandit=sections["bandit"],
            rl=sections["rl"],
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(str(err)) from err
