import math

import numpy as np
import pytest

import oracles
from ar2peak.errors import ConfigurationError, DomainError
from ar2peak.periodogram import gamma_tilde
from ar2peak.simulate import (
    SimConfig,
    TimeSeries,
    apply_filter,
    auto_burn_in,
    simulate_driver,
    simulate_process,
)
from ar2peak.spectral_model import DriverSpec, ProcessSpec, theoretical_acf


def lag_corr(u, h):
    u = u - u.mean()
    return np.dot(u[:-h], u[h:]) / np.dot(u, u)


class TestTimeSeries:
    def test_copy_and_read_only(self):
        raw = np.arange(10.0)
        ts = TimeSeries(raw)
        raw[0] = 99.0
        assert ts.values[0] == 0.0
        with pytest.raises(ValueError):
            ts.values[1] = 5.0

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            TimeSeries([1.0, np.nan, 2.0])


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(n=7), dict(n=100, burn_in=-1), dict(n=10.5)])
    def test_invalid(self, kw):
        with pytest.raises(ConfigurationError):
            SimConfig(**kw)

    def test_auto_burn_in_rule(self):
        for d in (0.5, 0.1, 0.001):
            b = auto_burn_in(d)
            assert (1 - d) ** b < 1e-6 <= (1 - d) ** (b - 1)

    def test_auto_burn_in_too_long(self):
        with pytest.raises(ConfigurationError):
            auto_burn_in(1e-7)
        with pytest.raises(ConfigurationError):
            simulate_process(ProcessSpec(1e-7, 1.0), SimConfig(n=16))


class TestDriver:
    M = 100_000

    def test_white_variance(self):
        u = simulate_driver(DriverSpec.white(), self.M, 1).values
        assert abs(u.var() - 1) <= 0.03

    def test_ar1_lag_one(self):
        u = simulate_driver(DriverSpec.ar1(0.5), self.M, 2).values
        assert abs(lag_corr(u, 1) - 0.5) <= 0.02

    def test_ma1_cuts_off(self):
        u = simulate_driver(DriverSpec.ma1(0.4), self.M, 3).values
        assert abs(lag_corr(u, 2)) <= 0.02
        assert abs(lag_corr(u, 1) - 0.4 / 1.16) <= 0.02

    def test_ar1_starts_stationary(self):
        firsts = np.array([simulate_driver(DriverSpec.ar1(0.9), 1, s).values[0] for s in range(4000)])
        assert firsts.var() == pytest.approx(1 / (1 - 0.81), rel=0.1)


class TestProcess:
    SPEC = ProcessSpec(0.5, math.pi / 2)

    def test_zero_input_gives_zero_output(self):
        assert np.all(apply_filter(self.SPEC, np.zeros(64)) == 0.0)

    def test_filter_recursion(self):
        u = np.random.default_rng(0).standard_normal(30)
        spec = ProcessSpec(0.3, 0.8)
        a1, a2 = spec.ar_coefficients
        x = np.zeros(30)
        for t in range(30):
            x[t] = u[t] + (a1 * x[t - 1] if t >= 1 else 0) + (a2 * x[t - 2] if t >= 2 else 0)
        np.testing.assert_allclose(apply_filter(spec, u), x, rtol=1e-12, atol=1e-14)

    def test_impulse_response_is_ma_weights(self):
        spec = ProcessSpec(0.2, 1.3)
        imp = np.zeros(40)
        imp[0] = 1
        np.testing.assert_allclose(apply_filter(spec, imp), oracles.chebyshev_b(0.2, 1.3, 39), atol=1e-13)

    def test_deterministic(self):
        cfg = SimConfig(n=256, seed=42)
        a = simulate_process(self.SPEC, cfg).values
        b = simulate_process(self.SPEC, cfg).values
        assert np.array_equal(a, b)
        assert not np.array_equal(a, simulate_process(self.SPEC, SimConfig(n=256, seed=43)).values)

    def test_linearity(self):
        cfg = SimConfig(n=500, seed=5)
        x1 = simulate_process(ProcessSpec(0.1, 1.0, DriverSpec.ar1(0.3, 1.0)), cfg).values
        x2 = simulate_process(ProcessSpec(0.1, 1.0, DriverSpec.ar1(0.3, 4.0)), cfg).values
        assert np.array_equal(2 * x1, x2)

    def test_explicit_burn_in(self):
        x = simulate_process(self.SPEC, SimConfig(n=32, seed=0, burn_in=0))
        assert x.n == 32 and x.seed == 0

    def test_variance_matches_quadrature(self):
        spec = ProcessSpec(0.1, 1.0)
        x = simulate_process(spec, SimConfig(n=200_000, seed=2024)).values
        g0 = theoretical_acf(spec, 2).gamma[0]
        assert abs(x.var() / g0 - 1) <= 0.1

    @pytest.mark.parametrize("delta,driver", [(0.05, DriverSpec.white()), (0.2, DriverSpec.ar1(0.5)), (0.1, DriverSpec.ma1(0.4))])
    def test_second_moments_within_batch_errors(self, delta, driver):
        spec = ProcessSpec(delta, 1.0, driver)
        x = simulate_process(spec, SimConfig(n=200_000, seed=77)).values
        target = theoretical_acf(spec, 2).gamma
        batches = np.array([gamma_tilde(b, 2) for b in np.split(x, 20)])
        se = batches.std(ddof=1, axis=0) / math.sqrt(20)
        est = gamma_tilde(x, 2)
        assert np.all(np.abs(est - target) <= 5 * se)
