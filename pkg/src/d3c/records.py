"""Per-run time series shared by the exact and bandit loops."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RunRecord:
    """Logged trajectory of one seeded run.

    Column blocks (all aligned on `steps`): raw per-agent losses/returns,
    mixed ditto, per-agent additive rho estimates, the max utilitarian
    bound (NaN where undefined), ratio-to-optimal (NaN without a closed
    form), per-agent mean relative attention, and the flattened mixing
    matrix. `final_params`/`final_A` carry the end state but are not CSV
    columns.
    """

    run_id: int
    n_agents: int
    steps: np.ndarray
    raw: np.ndarray
    mixed: np.ndarray
    rho: np.ndarray
    rho_max: np.ndarray
    ratio: np.ndarray
    attention: np.ndarray
    a_entries: np.ndarray
    final_params: np.ndarray | None = None
    final_A: np.ndarray | None = None
    extras: dict = field(default_factory=dict)

    def column_names(self) -> list[str]:
        n = self.n_agents
        names = ["run", "step"]
        names += [f"raw_{i}" for i in range(n)]
        names += [f"mixed_{i}" for i in range(n)]
        names += [f"rho_{i}" for i in range(n)]
        names += ["rho_max", "ratio_to_opt"]
        names += [f"attention_{i}" for i in range(n)]
        names += [f"a_{i}_{j}" for i in range(n) for j in range(n)]
        return names

    def rows(self):
        """Yield CSV rows (list of floats/ints) in step order."""
        for t in range(self.steps.size):
            row = [self.run_id, int(self.steps[t])]
            row += list(self.raw[t])
            row += list(self.mixed[t])
            row += list(self.rho[t])
            row += [self.rho_max[t], self.ratio[t]]
            row += list(self.attention[t])
            row += list(self.a_entries[t])
            yield row


class RecordBuilder:
    """Accumulates logged steps and freezes them into a RunRecord."""

    def __init__(self, run_id: int, n_agents: int):
        self.run_id = run_id
        self.n = n_agents
        self._steps: list[int] = []
        self._raw: list[np.ndarray] = []
        self._mixed: list[np.ndarray] = []
        self._rho: list[np.ndarray] = []
        self._rho_max: list[float] = []
        self._ratio: list[float] = []
        self._attention: list[np.ndarray] = []
        self._a: list[np.ndarray] = []

    def log(self, step, raw, mixed, rho, rho_max, ratio, attention, A):
        self._steps.append(int(step))
        self._raw.append(np.array(raw, dtype=float))
        self._mixed.append(np.array(mixed, dtype=float))
        self._rho.append(np.array(rho, dtype=float))
        self._rho_max.append(float(rho_max))
        self._ratio.append(float(ratio))
        self._attention.append(np.array(attention, dtype=float))
        self._a.append(np.asarray(A, dtype=float).ravel().copy())

    def build(self, final_params=None, final_A=None, extras=None) -> RunRecord:
        return RunRecord(
            run_id=self.run_id,
            n_agents=self.n,
            steps=np.array(self._steps, dtype=int),
            raw=np.array(self._raw),
            mixed=np.array(self._mixed),
            rho=np.array(self._rho),
            rho_max=np.array(self._rho_max),
            ratio=np.array(self._ratio),
            attention=np.array(self._attention),
            a_entries=np.array(self._a),
            final_params=None if final_params is None else np.array(final_params),
            final_A=None if final_A is None else np.array(final_A),
            extras=dict(extras or {}),
        )
