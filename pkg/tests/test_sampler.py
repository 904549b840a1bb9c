import math

import numpy as np
import pytest
from scipy import stats

from pensemble import (
    KernelParams,
    RejectionBudgetExceededError,
    SamplerConfig,
    derive_trial_rng,
    sample_projective_ensemble,
    sample_uniform_cp,
)

KS_ALPHA = 1e-3


def _chart_radial_stat(points):
    # u = |z|^2/(1+|z|^2) of the chart image equals 1 - |<x, e1>|^2.
    return 1.0 - np.abs(points[:, 0]) ** 2


def test_uniform_chart_radial_cdf():
    d, n = 2, 100_000
    rng = np.random.default_rng(101)
    pts = np.stack([sample_uniform_cp(d, rng).coords for _ in range(n)])
    u = _chart_radial_stat(pts)
    res = stats.kstest(u, lambda x: x**d)
    assert res.pvalue > KS_ALPHA


def test_uniform_d1_overlap_is_uniform():
    rng = np.random.default_rng(103)
    vals = np.array(
        [abs(sample_uniform_cp(1, rng).coords[0]) ** 2 for _ in range(100_000)]
    )
    res = stats.kstest(vals, "uniform")
    assert res.pvalue > KS_ALPHA


def test_uniform_overlap_mean_matches_beta_moment():
    d, n = 3, 100_000
    rng = np.random.default_rng(107)
    vals = np.array([abs(sample_uniform_cp(d, rng).coords[0]) ** 2 for _ in range(n)])
    mean = vals.mean()
    se = vals.std(ddof=1) / math.sqrt(n)
    assert abs(mean - 1.0 / (d + 1)) <= 4.0 * se


def test_L0_sample_is_one_uniform_point():
    params = KernelParams(2, 0)
    u_stats = []
    for seed in range(2000):
        s = sample_projective_ensemble(SamplerConfig(params=params, seed=seed))
        assert len(s.points) == 1
        u_stats.append(_chart_radial_stat(s.matrix)[0])
    res = stats.kstest(np.array(u_stats), lambda x: x**2)
    assert res.pvalue > KS_ALPHA


@pytest.mark.parametrize("d,L", [(1, 1), (1, 3), (2, 1), (2, 2)])
def test_sample_cardinality_and_norms(d, L):
    params = KernelParams(d, L)
    s = sample_projective_ensemble(SamplerConfig(params=params, seed=5))
    assert len(s.points) == params.r
    assert np.allclose(np.linalg.norm(s.matrix, axis=1), 1.0, atol=1e-12)


def test_sample_points_projectively_distinct():
    params = KernelParams(2, 2)
    s = sample_projective_ensemble(SamplerConfig(params=params, seed=77))
    gram = np.abs(s.matrix @ s.matrix.conj().T)
    np.fill_diagonal(gram, 0.0)
    assert gram.max() < 1.0 - 1e-12


def test_sampler_determinism():
    params = KernelParams(2, 1)
    a = sample_projective_ensemble(SamplerConfig(params=params, seed=42))
    b = sample_projective_ensemble(SamplerConfig(params=params, seed=42))
    assert np.array_equal(a.matrix, b.matrix)
    assert a.proposals_per_step == b.proposals_per_step
    c = sample_projective_ensemble(SamplerConfig(params=params, seed=43))
    assert not np.array_equal(a.matrix, c.matrix)


def test_acceptance_rate_tracks_residual_trace():
    # Mean acceptance rate of step i should be (r - i)/r within 5% relative.
    params = KernelParams(2, 1)
    runs = 4000
    proposals = np.zeros(params.r)
    for seed in range(runs):
        s = sample_projective_ensemble(SamplerConfig(params=params, seed=seed))
        proposals += np.asarray(s.proposals_per_step)
    rates = runs / proposals
    expected = (params.r - np.arange(params.r)) / params.r
    assert np.all(np.abs(rates - expected) <= 0.05 * expected)


def test_larger_rank_sample_completes_with_distinct_points():
    params = KernelParams(1, 20)  # r = 21, late steps re-orthogonalize often
    s = sample_projective_ensemble(SamplerConfig(params=params, seed=303))
    assert len(s.points) == 21
    gram = np.abs(s.matrix @ s.matrix.conj().T)
    np.fill_diagonal(gram, 0.0)
    assert gram.max() < 1.0 - 1e-12


def test_rejection_budget_raises():
    params = KernelParams(1, 9)  # late steps accept rarely; budget 1 must trip
    config = SamplerConfig(params=params, seed=0, max_rejections_per_point=1)
    with pytest.raises(RejectionBudgetExceededError):
        sample_projective_ensemble(config)


def test_one_point_intensity_matches_uniform_two_sample_ks():
    # Pooled per-point statistic of the process vs. plain uniform draws.
    d, L, samples = 1, 1, 50_000
    params = KernelParams(d, L)
    pooled = []
    for index in range(samples):
        rng = derive_trial_rng(909, index)
        from pensemble.sampler import _sample_points

        matrix, _ = _sample_points(params, rng, 10_000_000)
        pooled.append(_chart_radial_stat(matrix))
    pooled = np.concatenate(pooled)
    assert pooled.size >= 100_000
    rng = np.random.default_rng(910)
    uniform = np.stack([sample_uniform_cp(d, rng).coords for _ in range(100_000)])
    res = stats.ks_2samp(pooled, _chart_radial_stat(uniform))
    assert res.pvalue > KS_ALPHA


def test_derive_trial_rng_repeatable():
    a = derive_trial_rng(7, 3).random(64)
    b = derive_trial_rng(7, 3).random(64)
    assert np.array_equal(a, b)


def test_derive_trial_rng_streams_differ():
    a = derive_trial_rng(7, 0).random(64)
    b = derive_trial_rng(7, 1).random(64)
    assert not np.array_equal(a, b)


def test_trials_independent_of_execution_order():
    params = KernelParams(1, 1)
    from pensemble.sampler import _sample_points

    def run(index):
        rng = derive_trial_rng(55, index)
        matrix, _ = _sample_points(params, rng, 10_000_000)
        return matrix

    forward = [run(i) for i in range(10)]
    backward = [run(i) for i in reversed(range(10))][::-1]
    for a, b in zip(forward, backward):
        assert np.array_equal(a, b)


def test_seed_validation():
    with pytest.raises(ValueError):
        SamplerConfig(params=KernelParams(1, 1), seed=-1)
    with pytest.raises(ValueError):
        derive_trial_rng(2**64, 0)
