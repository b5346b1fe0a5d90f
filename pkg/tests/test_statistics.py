import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, stats

from toeplitz_rmt.ensemble import DistributionSpec, EnsembleConfig, sample
from toeplitz_rmt.linalg import trace_power
from toeplitz_rmt.moments import exact_expected_moment
from toeplitz_rmt.statistics import (
    SpacingSample,
    central_moment,
    empirical_moment,
    empirical_moments,
    fit_report,
    goe_cdf,
    ks_statistic,
    moment_samples,
    poisson_cdf,
    spacing_sample,
)

KINDS = ["gaussian", "rademacher", "uniform-sym"]


def within(est, target, z=5.0):
    # deterministic estimators (e.g. Rademacher M_2) have stderr ~ 1e-17
    return abs(est.mean - target) <= z * est.stderr + 1e-12


def test_zeroth_moment_is_exactly_one():
    est = empirical_moment(EnsembleConfig(40, master_seed=1), 0, 20)
    assert est.mean == 1.0
    assert est.stderr == 0.0


def test_second_moment_n100():
    est = empirical_moment(EnsembleConfig(100, master_seed=2), 2, 1000)
    assert within(est, 0.99)


@pytest.mark.parametrize("kind", KINDS)
def test_second_moment_all_distributions(kind):
    est = empirical_moment(EnsembleConfig(60, DistributionSpec(kind), master_seed=3), 2, 1000)
    assert within(est, 1 - 1 / 60)


@pytest.mark.parametrize("kind", KINDS)
def test_fourth_moment_matches_exact_expectation(kind):
    dist = DistributionSpec(kind)
    est = empirical_moment(EnsembleConfig(30, dist, master_seed=4), 4, 4000)
    assert within(est, float(exact_expected_moment(4, 30, dist)))


def test_odd_moment_small():
    n = 100
    est = empirical_moment(EnsembleConfig(n, master_seed=5), 3, 500)
    assert abs(est.mean) <= max(5 * est.stderr, 1 / math.sqrt(n))


def test_trials_guard():
    with pytest.raises(ValueError):
        empirical_moment(EnsembleConfig(10), 2, 1)
    with pytest.raises(ValueError):
        moment_samples(EnsembleConfig(10), [13], 5)


@pytest.mark.parametrize("n", [8, 33, 64])
def test_moments_match_trace_lemma(n):
    cfg = EnsembleConfig(n, DistributionSpec("uniform-sym"), master_seed=6)
    ks = list(range(1, 9))
    m = moment_samples(cfg, ks, 5)
    for t in range(5):
        s = sample(cfg, t)
        for j, k in enumerate(ks):
            scale = np.sum(np.abs(np.linalg.eigvalsh(s.matrix())) ** k) / n ** (k / 2 + 1)
            assert abs(m[t, j] - trace_power(s, k) / n ** (k / 2 + 1)) <= 1e-6 * scale


def test_parallel_and_chunking_are_bit_identical():
    cfg = EnsembleConfig(20, master_seed=7)
    one = moment_samples(cfg, [2, 4], 150)
    two = moment_samples(cfg, [2, 4], 150, workers=2)
    assert np.array_equal(one, two)
    assert np.array_equal(moment_samples(cfg, [2, 4], 70), one[:70])


def test_estimates_for_several_orders():
    ests = empirical_moments(EnsembleConfig(30, master_seed=8), [0, 1, 2], 50)
    assert [e.k for e in ests] == [0, 1, 2]
    assert all(e.trials == 50 and e.n == 30 for e in ests)


def test_central_moment_of_constant_is_zero():
    cfg = EnsembleConfig(2, DistributionSpec("rademacher"), master_seed=9)
    for order in (2, 4):
        assert central_moment(cfg, 0, order, 100).value == 0.0


def test_central_moment_guards():
    cfg = EnsembleConfig(10)
    with pytest.raises(ValueError):
        central_moment(cfg, 2, 3, 200)
    with pytest.raises(ValueError):
        central_moment(cfg, 2, 2, 99)


def test_central_moment_variance_matches_numpy():
    cfg = EnsembleConfig(16, master_seed=10)
    m = moment_samples(cfg, [4], 300)[:, 0]
    est = central_moment(cfg, 4, 2, 300)
    assert est.value == pytest.approx(np.var(m), rel=1e-12)
    assert central_moment(cfg, 4, 4, 300).value >= 0


def test_spacing_window_three():
    s = spacing_sample(EnsembleConfig(30, master_seed=11), 1, 3)
    assert s.gaps.shape == (2,)
    assert np.all(s.gaps >= 0)
    assert s.gaps.mean() == pytest.approx(1.0, abs=1e-12)


def test_spacing_degenerate_two_by_two():
    s = spacing_sample(EnsembleConfig(2, master_seed=12), 1, 2, strict=False)
    assert s.gaps.shape == (1,)
    assert s.gaps[0] == pytest.approx(1.0, abs=1e-12)


def test_spacing_pooled_normalization():
    s = spacing_sample(EnsembleConfig(200, master_seed=13), 25, 11)
    assert s.gaps.size == 250
    assert abs(s.gaps.mean() - 1.0) < 1e-12
    assert s.window == 11 and s.matrices == 25


@pytest.mark.parametrize("window", [4, 1, 21])
def test_spacing_window_errors(window):
    with pytest.raises(ValueError):
        spacing_sample(EnsembleConfig(200), 1, window)


def test_model_cdfs():
    s = np.linspace(0, 5, 101)
    assert np.all(np.diff(poisson_cdf(s)) >= 0)
    assert goe_cdf(0.0) == 0.0
    # the Wigner surmise has unit mean: E[s] = integral of (1 - F)
    mean, _ = integrate.quad(lambda v: 1 - goe_cdf(v), 0, np.inf)
    assert mean == pytest.approx(1.0, abs=1e-9)


def test_ks_exponential_sample():
    x = np.random.default_rng(14).exponential(size=10_000)
    ks_p = ks_statistic(x, "poisson")
    assert ks_p < 0.02
    assert ks_statistic(x, "goe") > ks_p
    assert ks_p == pytest.approx(stats.kstest(x, "expon").statistic, abs=1e-12)
    assert ks_statistic(x, "goe") == pytest.approx(stats.kstest(x, goe_cdf).statistic, abs=1e-12)


def test_ks_against_own_empirical_cdf():
    x = np.random.default_rng(15).exponential(size=500)
    assert ks_statistic(x, x) == 0.0
    assert ks_statistic(SpacingSample(x, 3, 1), x.copy()) == 0.0


def test_ks_two_sample_matches_scipy():
    rng = np.random.default_rng(16)
    a, b = rng.exponential(size=300), rng.rayleigh(size=200)
    assert ks_statistic(a, b) == pytest.approx(stats.ks_2samp(a, b).statistic, abs=1e-12)


def test_ks_empty():
    with pytest.raises(ValueError):
        ks_statistic(np.array([]), "poisson")


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0, 10, allow_nan=False), min_size=1, max_size=50), st.randoms())
def test_ks_permutation_invariant_and_bounded(values, rnd):
    x = np.array(values)
    y = x.copy()
    rnd.shuffle(y)
    for model in ("poisson", "goe"):
        d = ks_statistic(x, model)
        assert 0 <= d <= 1
        assert ks_statistic(y, model) == d


def test_fit_report_histogram():
    x = np.random.default_rng(17).exponential(size=2000)
    x = x / x.mean()
    rep = fit_report(SpacingSample(x, 11, 200))
    assert len(rep.edges) == 51 and rep.edges[-1] == 5.0
    assert rep.counts.sum() == np.sum(x < 5.0)
    assert 0 <= rep.ks_poisson <= 1 and 0 <= rep.ks_goe <= 1
    rows = rep.histogram_rows()
    assert rows[0][:2] == (0.0, 0.1)
    assert sum(r[3] * 0.1 for r in rows) == pytest.approx(np.mean(x < 5.0))
