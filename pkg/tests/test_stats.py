import numpy as np
import pytest
from scipy import stats as sps

from d3c.stats import cointegration_coeff, harmonic_mean_p, permutation_pvalue


def test_shifted_copy_has_unit_coefficient():
    rng = np.random.default_rng(0)
    t1 = np.cumsum(rng.normal(size=400))
    assert cointegration_coeff(t1, t1 + 17.5) == pytest.approx(1.0)


def test_independent_noise_small_coefficient():
    rng = np.random.default_rng(1)
    coeffs = [
        abs(cointegration_coeff(np.cumsum(rng.normal(size=1000)), np.cumsum(rng.normal(size=1000))))
        for _ in range(40)
    ]
    assert np.mean(np.array(coeffs) < 0.1) > 0.9


def test_permutation_pvalue_bounds_and_power():
    rng = np.random.default_rng(2)
    base = np.cumsum(rng.normal(size=300))
    correlated = base + np.cumsum(rng.normal(scale=0.2, size=300))
    p = permutation_pvalue(base, correlated, resamples=199, rng=rng)
    assert 0.0 < p <= 1.0
    assert p < 0.05  # strongly synchronized pair


def test_permutation_pvalue_uniform_under_null():
    rng = np.random.default_rng(5)
    pvals = []
    for _ in range(150):
        t1 = np.cumsum(rng.normal(size=120))
        t2 = np.cumsum(rng.normal(size=120))
        pvals.append(permutation_pvalue(t1, t2, resamples=99, rng=rng))
    assert sps.kstest(pvals, "uniform").pvalue > 0.01


def test_harmonic_mean_p():
    assert harmonic_mean_p([1.0, 1.0]) == pytest.approx(1.0)
    assert harmonic_mean_p([0.5]) == pytest.approx(0.5)
    assert harmonic_mean_p([0.01, 0.04]) == pytest.approx(2.0 / (100.0 + 25.0))
    with pytest.raises(ValueError):
        harmonic_mean_p([0.2, 0.0])
