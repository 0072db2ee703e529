import os
import subprocess
import sys

import numpy as np
import pytest
from scipy import stats

import oracles
from qdesign.errors import CapacityError, UnsupportedError
from qdesign.mc_oracle import (DEFAULT_SEED, SamplerConfig, bloch_radii_hs, default_seed,
                               estimate_haar_trace_moments, estimate_omega,
                               estimate_power_traces, estimate_simplex_moments, reference_values,
                               sample_fs, sample_haar, sample_hs)
from qdesign.moments import haar_trace_moment


def test_same_seed_same_samples():
    a = sample_hs(SamplerConfig(3, 1000, 42, chunk_size=100))
    b = sample_hs(SamplerConfig(3, 1000, 42, chunk_size=100))
    np.testing.assert_array_equal(a, b)
    c = sample_hs(SamplerConfig(3, 1000, 43, chunk_size=100))
    assert np.abs(a - c).max() > 0.1


def test_worker_count_does_not_change_estimates():
    one = estimate_power_traces(2, (2, 3), SamplerConfig(2, 5000, 9, chunk_size=512))
    many = estimate_power_traces(2, (2, 3), SamplerConfig(2, 5000, 9, chunk_size=512, workers=3))
    for k in (2, 3):
        assert float(one[k].mean) == float(many[k].mean)
        assert float(one[k].stderr) == float(many[k].stderr)


def test_prefix_of_a_longer_run_is_shared():
    short = sample_fs(SamplerConfig(4, 100, 5, chunk_size=64))
    long = sample_fs(SamplerConfig(4, 300, 5, chunk_size=64))
    np.testing.assert_array_equal(short[:64], long[:64])


def test_config_validation():
    for kwargs in ({"dim": 0, "count": 1}, {"dim": 2, "count": 0},
                   {"dim": 2, "count": 1, "chunk_size": 0}, {"dim": 2, "count": 1, "seed": -1}):
        with pytest.raises(ValueError):
            SamplerConfig(**kwargs)


def test_seed_from_environment():
    env = dict(os.environ, QDESIGN_SEED="0x10")
    out = subprocess.run([sys.executable, "-c", "from qdesign.mc_oracle import default_seed;"
                          "print(default_seed())"], env=env, capture_output=True, text=True,
                         check=True)
    assert out.stdout.strip() == "16"
    if "QDESIGN_SEED" not in os.environ:
        assert default_seed() == DEFAULT_SEED


def test_samples_are_valid():
    rho = sample_hs(SamplerConfig(3, 200, 1))
    np.testing.assert_allclose(np.trace(rho, axis1=1, axis2=2), 1, atol=1e-13)
    assert np.linalg.eigvalsh(rho).min() >= -1e-13
    u = sample_haar(SamplerConfig(3, 200, 1))
    np.testing.assert_allclose(u @ u.conj().transpose(0, 2, 1), np.broadcast_to(np.eye(3), u.shape),
                               atol=1e-13)
    v = sample_fs(SamplerConfig(5, 200, 1))
    np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1, atol=1e-14)


# ---------------------------------------------------------------- distributions

def test_hs_qubit_radii_follow_ball_volume_law():
    # HS qubits are uniform in the radius-1/2 ball, so (2r)^3 is uniform on [0, 1]
    r = bloch_radii_hs(SamplerConfig(2, 100_000, 17))
    assert stats.kstest((2 * r) ** 3, "uniform").pvalue > 0.01


def test_hs_qubit_radius_histogram_chi_square():
    r = bloch_radii_hs(SamplerConfig(2, 10 ** 6, 18))
    edges = np.linspace(0, 0.5, 21)
    observed, _ = np.histogram(r, edges)
    expected = len(r) * np.diff(8 * edges ** 3)  # CDF of the density 24 r^2
    assert stats.chisquare(observed, expected).pvalue > 0.01


def test_fs_overlap_is_beta_distributed():
    v = sample_fs(SamplerConfig(3, 50_000, 19))
    assert stats.kstest(np.abs(v[:, 0]) ** 2, stats.beta(1, 2).cdf).pvalue > 0.01


def test_haar_trace_moments_match_exact_values():
    est = estimate_haar_trace_moments(3, 3, SamplerConfig(3, 200_000, 21))
    for t, e in est.items():
        assert e.within(haar_trace_moment(3, t)), t


def test_pinned_haar_moments_are_catalan_numbers():
    # five moments of one sample set checked together: family-wise 4 sigma
    block = reference_values()["haar_trace_moments_u2"]
    for t, v in block["values"].items():
        assert abs(v["mean"] - oracles.catalan(int(t))) <= 4 * v["stderr"], t


def test_haar_zscores_are_standard_normal():
    z = []
    for seed in range(100, 140):
        e = estimate_haar_trace_moments(2, 1, SamplerConfig(2, 20_000, seed))[1]
        z.append(float((e.mean - 1) / e.stderr))
    assert stats.kstest(z, "norm").pvalue > 0.01


def test_pinned_power_traces():
    vals = reference_values()["hs_power_traces_n2"]["values"]
    assert abs(vals["2"]["mean"] - 4 / 5) <= 3 * vals["2"]["stderr"]
    assert abs(vals["3"]["mean"] - 7 / 10) <= 3 * vals["3"]["stderr"]


# ---------------------------------------------------------------- omega estimates

def test_first_order_estimate_is_identity_over_n():
    est = estimate_omega(3, 1, SamplerConfig(3, 20_000, 23))
    np.testing.assert_allclose(est.exact, np.eye(3) / 3)
    assert est.within_3_sigma


def test_qutrit_second_order_estimate():
    # 81 entries checked jointly, so the bound is widened to 4 sigma
    est = estimate_omega(3, 2, SamplerConfig(3, 200_000, 24))
    assert est.max_zscore <= 4.0


def test_error_shrinks_like_inverse_square_root():
    small = estimate_omega(2, 2, SamplerConfig(2, 10_000, 25))
    big = estimate_omega(2, 2, SamplerConfig(2, 160_000, 25))
    ratio = np.median(small.estimate.stderr / np.where(big.estimate.stderr > 0,
                                                       big.estimate.stderr, np.inf))
    assert ratio == pytest.approx(4.0, rel=0.1)


def test_capacity_and_dimension_guards():
    with pytest.raises(CapacityError):
        estimate_omega(2, 13, SamplerConfig(2, 10))
    with pytest.raises(ValueError):
        estimate_omega(2, 2, SamplerConfig(3, 10))
    with pytest.raises(UnsupportedError):
        bloch_radii_hs(SamplerConfig(3, 10))


def test_unsymmetrised_simplex_moments_are_ordered():
    est = estimate_simplex_moments(2, "hs", 1, SamplerConfig(2, 20_000, 26), symmetrize=False)
    assert float(est[(1, 0)].mean) > float(est[(0, 1)].mean)
    # largest eigenvalue is 1/2 + r with r ~ 24 r^2 on [0, 1/2], so its mean is 7/8
    assert est[(1, 0)].within(7 / 8)


@pytest.mark.parametrize("N,t", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4)])
def test_cycle_sum_ansatz_matches_sampling(N, t):
    # thousands of correlated entries: bound the worst entry at 4.5 sigma and the mean square
    res = estimate_omega(N, t, SamplerConfig(N, 20_000, 31 + 10 * N + t))
    z = res.estimate.zscore(res.exact)
    assert np.isfinite(z).all()
    assert res.max_zscore <= 4.5
    assert float((z ** 2).mean()) <= 1.5


def test_sampling_check_rejects_a_wrong_candidate():
    res = estimate_omega(2, 3, SamplerConfig(2, 20_000, 53))
    wrong = np.eye(8) / 8
    assert res.estimate.zscore(wrong).max() > 20
