"""Synchrony statistics for attention trajectories.

Co-integration here follows the difference-then-correlate recipe: take the
discrete differences of each series and report the Pearson correlation of
the two difference sequences. Significance is assessed by a permutation
test that shuffles one difference sequence, and multiple pairs are pooled
with the harmonic mean p-value.
"""

from __future__ import annotations

import numpy as np


def cointegration_coeff(t1: np.ndarray, t2: np.ndarray) -> float:
    """Pearson correlation of the first differences of two equal-length series."""
    d1 = np.diff(np.asarray(t1, dtype=float))
    d2 = np.diff(np.asarray(t2, dtype=float))
    if d1.size != d2.size:
        raise ValueError("series must have equal length")
    if d1.size < 2:
        raise ValueError("need at least three points")
    s1, s2 = d1.std(), d2.std()
    if s1 == 0.0 or s2 == 0.0:
        raise ValueError("degenerate series: zero variance in differences")
    return float(np.corrcoef(d1, d2)[0, 1])


def permutation_pvalue(
    t1: np.ndarray, t2: np.ndarray, resamples: int, rng: np.random.Generator
) -> float:
    """Two-sided permutation p-value for the co-integration coefficient.

    One difference sequence is reshuffled; the add-one convention keeps the
    p-value in (0, 1].
    """
    d1 = np.diff(np.asarray(t1, dtype=float))
    d2 = np.diff(np.asarray(t2, dtype=float))
    observed = abs(cointegration_coeff(t1, t2))
    hits = 0
    for _ in range(resamples):
        perm = rng.permutation(d2)
        stat = abs(float(np.corrcoef(d1, perm)[0, 1]))
        if stat >= observed:
            hits += 1
    return (hits + 1) / (resamples + 1)


def harmonic_mean_p(pvalues) -> float:
    """Harmonic mean of p-values (pooled evidence across pairs)."""
    p = np.asarray(pvalues, dtype=float)
    if p.size == 0:
        raise ValueError("need at least one p-value")
    if np.any(p <= 0.0) or np.any(p > 1.0):
        raise ValueError("p-values must lie in (0, 1]")
    return float(p.size / np.sum(1.0 / p))
