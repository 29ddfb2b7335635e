"""Outcome statistics: moments, duality, postprocessing pushforward, sampling."""

import numpy as np
import pytest

import gen
from gaussbreak import (
    GaussianChannel,
    GaussianState,
    MarginSpec,
    OutcomeGaussian,
    apply_channel_to_observable,
    apply_channel_to_state,
    apply_postprocessing,
    canonical_position,
    joint_from_postprocessings,
    margin,
    moment_distance,
    outcome_distribution,
    quadrature_observable,
    sample,
    vacuum_state,
)
from gaussbreak.errors import InvalidInputError


def test_vacuum_position_moments():
    dist = outcome_distribution(vacuum_state(1), canonical_position(1))
    assert dist.mean == pytest.approx([0.0])
    assert np.allclose(dist.covariance, [[0.5]], atol=1e-15)


def test_displacement_anchor():
    # displaced vacuum: q = 1, p = 2; position tracks +q, momentum +p
    st = GaussianState(np.eye(2), np.array([1.0, 2.0]))
    q = outcome_distribution(st, quadrature_observable((0.0, 1.0)))
    p = outcome_distribution(st, quadrature_observable((-1.0, 0.0)))
    assert q.mean == pytest.approx([1.0], abs=1e-15)
    assert p.mean == pytest.approx([2.0], abs=1e-15)


def test_observable_noise_enters_covariance_halved():
    st = vacuum_state(1)
    noisy = outcome_distribution(
        st, apply_channel_to_observable(GaussianChannel(np.eye(2), np.eye(2), np.zeros(2)),
                                        canonical_position(1)))
    assert np.allclose(noisy.covariance, [[1.0]], atol=1e-15)


def test_heisenberg_schroedinger_duality():
    rng = np.random.default_rng(20)
    for _ in range(100):
        n_in, n_out = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        ch = gen.valid_channel(rng, n_in, n_out)
        st = gen.valid_state(rng, n_in)
        obs = gen.valid_observable(rng, n_out, int(rng.integers(1, 4)))
        heis = outcome_distribution(st, apply_channel_to_observable(ch, obs))
        schr = outcome_distribution(apply_channel_to_state(ch, st), obs)
        assert moment_distance(heis, schr) < 1e-9


def test_postprocessing_is_affine_pushforward():
    rng = np.random.default_rng(21)
    for _ in range(100):
        n = int(rng.integers(1, 3))
        obs = gen.valid_observable(rng, n, int(rng.integers(1, 4)))
        pp = gen.valid_postprocessing(rng, obs.outcome_dim, int(rng.integers(1, 4)))
        st = gen.valid_state(rng, n)
        direct = outcome_distribution(st, apply_postprocessing(pp, obs))
        base = outcome_distribution(st, obs)
        # The offset enters the displacement parameter, which carries a minus
        # sign in the mean, so outcomes shift by -c.
        pushed = OutcomeGaussian(pp.a.T @ base.mean - pp.c,
                                 pp.a.T @ base.covariance @ pp.a + pp.b / 2)
        assert moment_distance(direct, pushed) < 1e-9


def test_joint_margins_are_block_marginals():
    rng = np.random.default_rng(22)
    g = gen.valid_observable(rng, 2, 3)
    pps = [gen.valid_postprocessing(rng, 3, 2), gen.valid_postprocessing(rng, 3, 1)]
    joint = joint_from_postprocessings(g, pps)
    ms = MarginSpec((2, 1))
    st = gen.valid_state(rng, 2)
    full = outcome_distribution(st, joint)
    for j, lo, hi in ((0, 0, 2), (1, 2, 3)):
        part = outcome_distribution(st, margin(joint, ms, j))
        assert np.allclose(part.mean, full.mean[lo:hi], atol=1e-12)
        assert np.allclose(part.covariance, full.covariance[lo:hi, lo:hi], atol=1e-12)


def test_sampling_matches_moments_within_five_sigma():
    rng = np.random.default_rng(23)
    st = gen.valid_state(rng, 2)
    obs = gen.valid_observable(rng, 2, 2)
    dist = outcome_distribution(st, obs)
    n = 100_000
    draws = sample(dist, n, seed=2024)
    assert draws.shape == (n, 2)
    emp_mean = draws.mean(axis=0)
    emp_cov = np.cov(draws.T, bias=False)
    sigma = np.sqrt(np.diag(dist.covariance))
    assert np.all(np.abs(emp_mean - dist.mean) < 5 * sigma / np.sqrt(n))
    for i in range(2):
        for j in range(2):
            # conservative standard error for a covariance entry
            se = (sigma[i] * sigma[j] + abs(dist.covariance[i, j])) / np.sqrt(n)
            assert abs(emp_cov[i, j] - dist.covariance[i, j]) < 5 * se


def test_sampling_is_deterministic_per_seed():
    dist = outcome_distribution(vacuum_state(1), canonical_position(1))
    a = sample(dist, 50, seed=7)
    b = sample(dist, 50, seed=7)
    c = sample(dist, 50, seed=8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_sampler_recipe_frozen():
    # Guards the documented generator + Gaussian transform against silent change.
    dist = outcome_distribution(vacuum_state(1), canonical_position(1))
    first = sample(dist, 3, seed=7).ravel()
    expected = [0.15916121965654081, -0.97762547490948459, 0.23401751214277133]
    assert first == pytest.approx(expected, abs=1e-15)


def test_degenerate_covariance_samples_on_support():
    # perfectly correlated pair: rank-1 covariance stays rank-1 in the draws
    dist = OutcomeGaussian(np.zeros(2), np.array([[1.0, 1.0], [1.0, 1.0]]))
    draws = sample(dist, 1000, seed=1)
    assert np.allclose(draws[:, 0], draws[:, 1], atol=1e-12)


def test_sample_rejects_bad_inputs():
    dist = OutcomeGaussian(np.zeros(1), np.eye(1))
    with pytest.raises(InvalidInputError):
        sample(dist, 0, seed=1)
    with pytest.raises(InvalidInputError):
        sample(OutcomeGaussian(np.zeros(2), np.array([[1.0, 0.0], [0.0, -1.0]])),
               10, seed=1)


def test_outcome_distribution_checks_modes():
    with pytest.raises(InvalidInputError):
        outcome_distribution(vacuum_state(2), canonical_position(1))


def test_moment_distance_requires_matching_dims():
    with pytest.raises(InvalidInputError):
        moment_distance(OutcomeGaussian(np.zeros(1), np.eye(1)),
                        OutcomeGaussian(np.zeros(2), np.eye(2)))
