import json
import math

import numpy as np
import pytest

from countstable import (
    CompoundParams,
    CountPmf,
    HermiteParams,
    compound_to_stable,
    convolve,
    half_abs_diff,
    hermite_sample,
    hermite_to_stable,
    panjer_pmf,
    panjer_pmf_auto,
    point_mass,
    poisson_pmf,
    poisson_shift_pmf,
    series_pmf,
    stable_sample,
    stable_to_compound,
    thin_pmf,
    tv_distance,
)
from conftest import max_abs_diff


def hermite_pmf(mu: float, sigma2: float, max_k: int) -> CountPmf:
    return panjer_pmf(stable_to_compound(hermite_to_stable(HermiteParams(mu, sigma2))), max_k)


class TestCountPmf:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            CountPmf(np.array([0.5, -0.1]), 0.6)

    def test_rejects_excess_mass(self):
        with pytest.raises(ValueError):
            CountPmf(np.array([0.8, 0.3]), 0.0)

    def test_rejects_uncovered_tail(self):
        with pytest.raises(ValueError):
            CountPmf(np.array([0.5]), 0.1)

    def test_immutable(self):
        x = point_mass(0)
        with pytest.raises(ValueError):
            x.probs[0] = 0.5

    def test_moment_helpers(self):
        x = poisson_pmf(2.0, 60)
        assert x.mean() == pytest.approx(2.0, abs=1e-12)
        assert x.dispersion() == pytest.approx(0.0, abs=1e-12)
        assert x.factorial_moment(3) == pytest.approx(8.0, abs=1e-10)

    def test_serialization(self):
        x = poisson_pmf(1.0, 5)
        payload = json.loads(json.dumps(x.to_json_dict()))
        assert payload["probs"][0] == pytest.approx(math.exp(-1.0))
        assert payload["tail_bound"] == x.tail_bound
        lines = x.to_csv_text().strip().split("\n")
        assert lines[0] == "k,p"
        assert lines[-1].startswith("tail,")
        k, p = lines[1].split(",")
        assert (int(k), float(p)) == (0, x.probs[0])


class TestPanjer:
    def test_unit_severity_is_poisson(self):
        got = panjer_pmf(CompoundParams(1.7, 1.0, 0.5), 40)
        want = poisson_pmf(1.7, 40)
        assert max_abs_diff(got, want) <= 1e-12

    def test_doubled_poisson(self):
        got = panjer_pmf(CompoundParams(1.0, 0.0, 2.0), 6)
        e = math.exp(-1.0)
        assert got.probs[0] == pytest.approx(e, rel=1e-14)
        assert got.probs[1] == 0.0
        assert got.probs[2] == pytest.approx(e, rel=1e-14)

    def test_matches_series_oracle(self):
        c = CompoundParams(1.0, 0.5, 0.5)
        got = panjer_pmf(c, 200)
        want = series_pmf(compound_to_stable(c), 200)
        assert max_abs_diff(got, want) <= 1e-10

    def test_lambda_zero(self):
        got = panjer_pmf(CompoundParams(0.0, 0.5, 0.5), 5)
        assert got.probs[0] == 1.0
        assert got.tail_bound == 0.0

    def test_auto_policy(self):
        dist = panjer_pmf_auto(CompoundParams(2.0, 0.4, 2.0))
        assert dist.tail_bound <= 1e-12

    def test_auto_cap_binds_heavy_tail(self):
        dist = panjer_pmf_auto(CompoundParams(1.0, 0.0, 0.3), cap=512)
        assert dist.max_k == 512
        assert dist.tail_bound > 1e-6  # honestly large

    def test_rate_too_large_rejected(self):
        with pytest.raises(ValueError, match="too large"):
            panjer_pmf(CompoundParams(800.0, 0.5, 0.5), 10)


class TestPoisson:
    def test_zero_rate(self):
        assert poisson_pmf(0.0, 3).probs[0] == 1.0

    def test_symmetry_at_one(self):
        x = poisson_pmf(1.0, 10)
        assert x.probs[0] == x.probs[1] == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_tail_small(self):
        assert poisson_pmf(2.0, 50).tail_bound <= 1e-15

    def test_large_rate_log_branch(self):
        from scipy.stats import poisson as sp_poisson

        x = poisson_pmf(800.0, 1000)
        ks = np.arange(650, 951)
        want = sp_poisson.pmf(ks, 800.0)
        assert np.max(np.abs(x.probs[650:951] - want)) < 1e-13

    def test_negative_rate(self):
        with pytest.raises(ValueError):
            poisson_pmf(-0.5, 5)


class TestThin:
    def test_identity(self):
        x = poisson_pmf(3.0, 50)
        assert thin_pmf(x, 1.0) is x

    def test_zero(self):
        x = poisson_pmf(3.0, 50)
        got = thin_pmf(x, 0.0)
        assert got.probs[0] == pytest.approx(1.0, abs=1e-12)
        assert math.fsum(got.probs[1:]) == 0.0

    def test_thin_poisson_is_poisson(self):
        got = thin_pmf(poisson_pmf(5.0, 120), 0.3)
        want = poisson_pmf(1.5, 120)
        assert max_abs_diff(got, want) <= 1e-12

    def test_semigroup(self):
        x = hermite_pmf(2.0, 2.0, 60)
        lhs = thin_pmf(thin_pmf(x, 0.7), 0.4)
        rhs = thin_pmf(x, 0.28)
        assert tv_distance(lhs, rhs) <= 1e-12

    def test_distributes_over_sum(self):
        x = poisson_pmf(1.0, 50)
        y = hermite_pmf(2.0, 1.0, 50)
        lhs = thin_pmf(convolve(x, y), 0.35)
        rhs = convolve(thin_pmf(x, 0.35), thin_pmf(y, 0.35))
        assert tv_distance(lhs, rhs) <= 1e-12

    def test_mean_scaling(self):
        x = hermite_pmf(2.0, 2.0, 80)
        assert thin_pmf(x, 0.4).mean() == pytest.approx(0.4 * x.mean(), abs=1e-10)

    def test_dispersion_scaling(self):
        x = hermite_pmf(2.0, 2.0, 80)
        assert thin_pmf(x, 0.4).dispersion() == pytest.approx(
            0.16 * x.dispersion(), abs=1e-10
        )

    def test_tail_propagates(self):
        x = panjer_pmf(CompoundParams(1.0, 0.0, 0.3), 200)
        assert thin_pmf(x, 0.5).tail_bound == x.tail_bound

    def test_domain(self):
        with pytest.raises(ValueError):
            thin_pmf(point_mass(0), -0.1)
        with pytest.raises(ValueError):
            thin_pmf(point_mass(0), 1.1)


class TestConvolve:
    def test_identity_element(self):
        y = poisson_pmf(2.0, 30)
        got = convolve(point_mass(0), y)
        assert max_abs_diff(got, y) == 0.0

    def test_poisson_additivity(self):
        got = convolve(poisson_pmf(0.7, 80), poisson_pmf(1.4, 80))
        want = poisson_pmf(2.1, 160)
        assert max_abs_diff(got, want) <= 1e-12

    def test_hermite_additivity(self):
        got = convolve(hermite_pmf(2.0, 2.0, 70), hermite_pmf(3.0, 1.0, 70))
        want = hermite_pmf(5.0, 3.0, 140)
        assert max_abs_diff(got, want) <= 1e-12
        assert tv_distance(got, want) <= 1e-12

    def test_truncation_loss_accounted(self):
        x = poisson_pmf(2.0, 40)
        got = convolve(x, x, max_k=10)
        assert got.max_k == 10
        assert got.tail_bound == pytest.approx(1.0 - got.total(), abs=1e-12)


class TestPoissonShift:
    def test_zero_shift(self):
        x = poisson_pmf(1.0, 30)
        assert poisson_shift_pmf(x, 0.0) is x

    def test_point_mass_becomes_poisson(self):
        got = poisson_shift_pmf(point_mass(0), 2.0)
        want = poisson_pmf(2.0, got.max_k)
        assert max_abs_diff(got, want) <= 1e-14

    def test_hermite_shift(self):
        got = poisson_shift_pmf(hermite_pmf(2.0, 2.0, 80), 0.5)
        want = hermite_pmf(2.5, 2.0, got.max_k)
        assert tv_distance(got, want) <= 1e-12

    def test_left_shift_rejected(self):
        with pytest.raises(ValueError):
            poisson_shift_pmf(point_mass(1), -0.5)

    def test_mean_and_dispersion(self):
        x = hermite_pmf(2.0, 2.0, 80)
        shifted = poisson_shift_pmf(x, 1.5)
        assert shifted.mean() == pytest.approx(x.mean() + 1.5, abs=1e-10)
        assert shifted.dispersion() == pytest.approx(x.dispersion(), abs=1e-9)

    def test_factorial_moment_binomial_identity(self):
        x = hermite_pmf(2.0, 1.0, 90)
        b = 0.8
        shifted = poisson_shift_pmf(x, b)
        for k in range(1, 5):
            want = math.fsum(
                math.comb(k, j) * b ** (k - j) * (x.factorial_moment(j) if j else 1.0)
                for j in range(k + 1)
            )
            assert shifted.factorial_moment(k) == pytest.approx(want, rel=1e-8)


class TestTvDistance:
    def test_self_distance_bounded_by_tail(self):
        x = panjer_pmf(CompoundParams(1.0, 0.0, 2.0), 6)
        assert tv_distance(x, x) <= x.tail_bound + 1e-15

    def test_point_masses(self):
        assert tv_distance(point_mass(0), point_mass(1)) == 1.0

    def test_nearby_poissons(self):
        d = tv_distance(poisson_pmf(1.0, 80), poisson_pmf(1.1, 80))
        assert 0.0 < d <= 0.1

    def test_half_abs_diff_excludes_tails(self):
        x = panjer_pmf(CompoundParams(1.0, 0.0, 0.3), 100)
        assert half_abs_diff(x, x) == 0.0
        assert tv_distance(x, x) > 0.0


class TestSamplers:
    def test_zero_rate_all_zero(self):
        rng = np.random.default_rng(0)
        assert stable_sample(CompoundParams(0.0, 0.5, 0.5), rng, 50) == [0] * 50

    def test_doubled_support_even(self):
        rng = np.random.default_rng(1)
        draws = stable_sample(CompoundParams(1.0, 0.0, 2.0), rng, 2000)
        assert all(v % 2 == 0 for v in draws)

    def test_hermite_mean(self):
        rng = np.random.default_rng(5)
        c = stable_to_compound(hermite_to_stable(HermiteParams(2.0, 2.0)))
        draws = np.asarray(stable_sample(c, rng, 100_000), dtype=float)
        se = draws.std(ddof=1) / math.sqrt(draws.size)
        assert abs(draws.mean() - 2.0) < 4.0 * se

    def test_hermite_sampler_even_case(self):
        rng = np.random.default_rng(6)
        draws = hermite_sample(HermiteParams(2.0, 2.0), rng, 5000)
        assert np.all(draws % 2 == 0)

    def test_hermite_sigma_zero_is_poisson(self):
        rng1 = np.random.default_rng(7)
        rng2 = np.random.default_rng(7)
        a = hermite_sample(HermiteParams(1.0, 0.0), rng1, 1000)
        b = rng2.poisson(1.0, 1000)
        assert np.array_equal(a, b)

    def test_seed_determinism(self):
        c = CompoundParams(1.0, 0.4, 0.5)
        a = stable_sample(c, np.random.default_rng(11), 500)
        b = stable_sample(c, np.random.default_rng(11), 500)
        assert a == b
