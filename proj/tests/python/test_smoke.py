"""Smoke tests for the python bindings: a few exact values per module and one
end-to-end experiment run."""

import math

import pytest

import disorderlab as dl


def test_sieve_and_mertens():
    t = dl.sieve_upto(10)
    assert list(t.primes) == [2, 3, 5, 7]
    assert len(dl.sieve_upto(1)) == 0
    t100 = dl.sieve_upto(100)
    assert len(t100) == 25
    assert dl.mertens_sum(t100, 10.0) == pytest.approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7)
    with pytest.raises(RuntimeError):
        dl.sieve_upto(10**10)  # above the default memory cap


def test_phase_reduction_linearity():
    ctx = dl.make_phase_context(100.0, 1.0)
    assert ctx.precision_bits >= 145 + 64
    table = dl.sieve_upto(100, ctx.precision_bits)
    twopi = 2 * math.pi
    a = dl.reduce_phase(ctx, 1.0, table, 0)  # p = 2
    b = dl.reduce_phase(ctx, 2.0, table, 0)
    d = (2 * a - b) % twopi
    assert min(d, twopi - d) < 1e-10


def test_prime_sum_grid_matches_pointwise():
    ctx = dl.make_phase_context(240.0, 1.0)
    table = dl.sieve_upto(500, ctx.precision_bits)
    spec = dl.PrimeSumSpec(240.0, 1.0, 1, 1)
    grid = dl.midpoint_u_grid(16)
    vals = dl.prime_sum_grid(spec, ctx, table, grid)
    one = dl.prime_sum_P(spec, ctx, table, grid[3])
    assert abs(vals[3] - one) < 1e-12


def test_disorder_oracles():
    assert dl.gaussian_mixed_moment(1, 1, 0.5) == pytest.approx(1.0)
    assert dl.gaussian_mixed_moment(2, 1, 0.5) == 0.0
    assert dl.gaussian_mixed_moment(2, 2, 0.15) == pytest.approx(0.18)
    spec = dl.MomentSpec([0.9, 0.3], [1, 2], [1, 2])
    assert dl.target_tensor(spec) == pytest.approx(0.162)
    assert dl.rect_prob(0.5, dl.Rect.quadrant()) == pytest.approx(0.25)
    emp, exact, se = dl.mgf_check(0.5 + 0j, 0.5 + 0j, 0.5, 50000, 11)
    assert exact == pytest.approx(math.exp(0.25))
    assert abs(emp - exact) < 4 * se


def test_zeta_values():
    assert dl.rs_theta(100.0) == pytest.approx(87.9721652, abs=1e-6)
    assert dl.hardy_Z(14.0) * dl.hardy_Z(14.2) < 0  # first zero bracket
    scan = dl.zero_count_scan(120.0)
    assert scan.count_upto(100.0) == 29
    assert scan.count_upto(50.0) == 10
    lz = dl.log_zeta_det(50.5, scan)
    assert lz.real == pytest.approx(math.log(abs(dl.hardy_Z(50.5))))


def test_rmt_counting():
    samples = dl.sample_cue(2, 2000, 5, dl.CueSampler.rejection)
    mean = sum(2.0 - 2.0 * math.cos(s.angles[0] - s.angles[1]) for s in samples) / len(samples)
    assert abs(mean - 3.0) < 0.25
    assert dl.dpp_count_variance(1, 0.0, math.pi) == pytest.approx(0.25, abs=1e-6)
    s = samples[0]
    raw, norm = dl.counting_stat(s, -math.pi + 1e-9, math.pi)
    assert raw == 2


def test_offdiag_and_diagonal():
    holds, m, n, slack = dl.offdiag_bound_check(200)
    assert holds and slack > 0 and n == m + 1
    t = dl.sieve_upto(10)
    d = dl.diagonal_exact(t, 3.0, 2)
    assert d.exact == pytest.approx(37.0 / 36.0)


def test_run_experiment_roundtrip():
    out = dl.run_experiment("mertens", {"x": "10"})
    assert out["all_pass"]
    assert out["records"][0]["estimate"] == pytest.approx(1.1761904761904762)
    assert "mertens" in dl.experiment_registry()
    with pytest.raises(RuntimeError):
        dl.run_experiment("nope")
