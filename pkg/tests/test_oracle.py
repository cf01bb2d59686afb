import math

import numpy as np
import pytest

from countstable import (
    CompoundParams,
    InsufficientSamplesError,
    InvalidParametersError,
    PowerSeries,
    SeriesError,
    StableParams,
    binomial_series,
    compound_to_stable,
    empirical_factorial_moment,
    exponent_series,
    mc_chisquare,
    panjer_pmf,
    point_mass,
    poisson_pmf,
    series_exp,
    series_log,
    series_pmf,
    stable_sample,
)
from conftest import compound_grid, max_abs_diff


class TestSeriesExp:
    def test_zero_series(self):
        got = series_exp(PowerSeries(np.zeros(6)))
        assert got.coeffs[0] == 1.0
        assert np.all(got.coeffs[1:] == 0.0)

    def test_exponential_series(self):
        b = 1.3
        a = np.zeros(10)
        a[1] = -b
        got = series_exp(PowerSeries(a)).coeffs
        want = [(-b) ** k / math.factorial(k) for k in range(10)]
        assert np.allclose(got, want, rtol=1e-14, atol=1e-16)

    def test_order_four_frozen_expansion(self):
        # exp(-0.7*s - 0.3*s^2) expanded by hand:
        # 1, -d, d^2/2 - g, -d^3/6 + d*g, d^4/24 - d^2*g/2 + g^2/2
        d, g = 0.7, 0.3
        a = np.zeros(5)
        a[1], a[2] = -d, -g
        got = series_exp(PowerSeries(a)).coeffs
        want = [
            1.0,
            -d,
            d * d / 2.0 - g,
            -(d**3) / 6.0 + d * g,
            d**4 / 24.0 - d * d * g / 2.0 + g * g / 2.0,
        ]
        assert np.allclose(got, want, rtol=0, atol=1e-14)

    def test_overflow_raises(self):
        a = np.zeros(4)
        a[0] = 1000.0
        with pytest.raises(SeriesError):
            series_exp(PowerSeries(a))

    def test_log_roundtrip(self):
        rng = np.random.default_rng(0)
        a = rng.normal(scale=0.4, size=30)
        b = series_exp(PowerSeries(a))
        back = series_log(b)
        assert np.max(np.abs(back.coeffs - a)) <= 1e-12

    def test_log_needs_positive_constant(self):
        with pytest.raises(SeriesError):
            series_log(PowerSeries(np.array([0.0, 1.0])))


class TestBinomialSeries:
    def test_integer_alphas(self):
        assert np.allclose(binomial_series(1.0, 4).coeffs, [1, 1, 0, 0, 0], atol=0)
        assert np.allclose(binomial_series(2.0, 4).coeffs, [1, 2, 1, 0, 0], atol=0)

    def test_half(self):
        assert binomial_series(0.5, 3).coeffs[2] == pytest.approx(-0.125)

    def test_binomial_theorem_numerically(self):
        alpha, u = 0.7, 0.4
        coeffs = binomial_series(alpha, 120).coeffs
        total = math.fsum(c * u**k for k, c in enumerate(coeffs))
        assert total == pytest.approx((1.0 + u) ** alpha, rel=1e-13)


class TestExponentSeries:
    def test_t_log_t_expansion_matches_function(self):
        # exponent series of the log form encodes (1-s)*log(1-s)
        a = exponent_series(StableParams(1.0, 1.0, -1.0), 400).coeffs
        # strip the -delta*(1-s) part: remaining = -gamma * tlogt, gamma = -1
        tlogt = a.copy()
        tlogt[0] -= -1.0
        tlogt[1] -= 1.0
        for s in (0.1, 0.25, 0.5, 0.6):
            got = math.fsum(c * s**k for k, c in enumerate(tlogt))
            want = (1.0 - s) * math.log(1.0 - s)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-14)

    def test_power_branch_matches_function(self):
        p = StableParams(0.5, 0.3, 0.8)
        a = exponent_series(p, 400).coeffs
        for s in (0.1, 0.3, 0.5):
            got = math.fsum(c * s**k for k, c in enumerate(a))
            t = 1.0 - s
            want = -p.delta * t - p.gamma * t**p.alpha
            assert got == pytest.approx(want, rel=1e-12)


class TestSeriesPmf:
    def test_poisson(self):
        got = series_pmf(StableParams(0.5, 1.3, 0.0), 40)
        want = poisson_pmf(1.3, 40)
        assert max_abs_diff(got, want) <= 1e-12

    def test_matches_panjer_on_grid(self):
        for c in compound_grid():
            p = compound_to_stable(c)
            got = series_pmf(p, 200)
            want = panjer_pmf(c, 200)
            assert max_abs_diff(got, want) <= 1e-10

    def test_invalid_params_rejected(self):
        with pytest.raises(InvalidParametersError):
            series_pmf(StableParams(2.5, 3.0, -1.0), 10)

    def test_invalid_expansion_goes_negative(self):
        # alpha > 2 produces structurally negative probability coefficients,
        # which is exactly what the series_pmf guard protects against
        coeffs = series_exp(exponent_series(StableParams(2.5, 3.0, -1.0), 12)).coeffs
        assert coeffs.min() < -1e-10


class TestChiSquare:
    def test_null_distribution(self):
        reference = poisson_pmf(2.0, 30)
        for seed in (0, 1, 2, 3, 4):
            rng = np.random.default_rng(seed)
            samples = rng.poisson(2.0, 50_000)
            _, pvalue = mc_chisquare(samples, reference)
            assert pvalue > 0.001

    def test_power(self):
        reference = poisson_pmf(2.0, 40)
        rng = np.random.default_rng(9)
        samples = rng.poisson(1.0, 100_000)
        _, pvalue = mc_chisquare(samples, reference)
        assert pvalue < 1e-6

    def test_point_mass_statistic_zero(self):
        samples = np.zeros(20_000, dtype=int)
        stat, pvalue = mc_chisquare(samples, point_mass(0))
        assert stat == 0.0
        assert pvalue == 1.0

    def test_insufficient_samples(self):
        with pytest.raises(InsufficientSamplesError):
            mc_chisquare(np.zeros(100), point_mass(0))

    def test_heavy_tail_reference(self):
        # tail cell carries real mass; the test must still calibrate
        c = CompoundParams(1.0, 0.4, 0.5)
        reference = panjer_pmf(c, 500)
        rng = np.random.default_rng(17)
        samples = stable_sample(c, rng, 50_000)
        _, pvalue = mc_chisquare(samples, reference)
        assert pvalue > 0.001


class TestFactorialMoments:
    def test_first_is_mean(self):
        xs = [0, 1, 2, 3, 4]
        assert empirical_factorial_moment(xs, 1) == pytest.approx(2.0)

    def test_constant_two(self):
        assert empirical_factorial_moment([2, 2, 2], 2) == pytest.approx(2.0)

    def test_poisson_moments(self):
        b = 1.5
        rng = np.random.default_rng(12)
        xs = rng.poisson(b, 400_000).astype(float)
        for k in (1, 2, 3):
            got = empirical_factorial_moment(xs, k)
            # SE of the k-th factorial moment estimated from the samples
            acc = np.ones_like(xs)
            for j in range(k):
                acc *= xs - j
            se = acc.std(ddof=1) / math.sqrt(xs.size)
            assert abs(got - b**k) < 4.0 * se

    def test_order_validation(self):
        with pytest.raises(ValueError):
            empirical_factorial_moment([1, 2], 0)
