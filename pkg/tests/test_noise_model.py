"""Angle distribution: validation, density, sampling, moments, oracles."""

import math

import numpy as np
import pytest

from polarloss.noise_model import (
    ChannelParams,
    GaussianMoments,
    ParameterError,
    SpreadWarning,
    distribution_distance,
    gauss_hermite_grid,
    moments_closed_form,
    moments_oracle,
    monte_carlo_moments,
    pdf,
    sample,
    validate_params,
)


class TestValidateParams:
    def test_well_inside_bounds(self):
        params = validate_params(0.0, 0.0, 0.1, 0.5)
        assert not params.spread_warning

    def test_large_effective_spread_warns(self):
        # sigma / sqrt(1 - x^2) = 0.1 / sqrt(1 - 0.999^2) ~ 2.2366 > pi/8
        with pytest.warns(SpreadWarning):
            params = validate_params(0.0, 0.0, 0.1, 0.999)
        assert params.spread_warning
        assert params.marginal_std == pytest.approx(2.236627204212937, abs=1e-12)

    def test_negative_sigma_rejected(self):
        with pytest.raises(ParameterError):
            validate_params(0.0, 0.0, -0.1, 0.5)

    def test_zero_sigma_rejected(self):
        with pytest.raises(ParameterError):
            validate_params(0.0, 0.0, 0.0, 0.5)

    @pytest.mark.parametrize("x", [-0.1, 1.1])
    def test_x_outside_unit_interval_rejected(self, x):
        with pytest.raises(ParameterError):
            validate_params(0.0, 0.0, 0.1, x)

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(ParameterError):
            validate_params(bad, 0.0, 0.1, 0.5)

    def test_x_equal_one_is_a_valid_record(self):
        params = ChannelParams(0.0, 0.0, 0.1, 1.0)
        assert params.spread_warning
        assert params.marginal_std == math.inf


class TestPdf:
    def test_peak_of_uncorrelated_gaussian(self):
        sigma = 0.17
        params = ChannelParams(0.0, 0.0, sigma, 0.0)
        assert pdf(params, 0.0, 0.0) == pytest.approx(1.0 / (2.0 * math.pi * sigma**2), rel=1e-14)

    def test_one_sigma_displacement_ratio(self):
        params = ChannelParams(0.0, 0.0, 0.1, 0.0)
        ratio = pdf(params, 0.1, 0.0) / pdf(params, 0.0, 0.0)
        assert ratio == pytest.approx(math.exp(-0.5), rel=1e-14)

    @pytest.mark.parametrize(
        "theta_star,phi_star,sigma,x",
        [(0.0, 0.0, 0.1, 0.0), (0.2, -0.1, 0.1, 0.5), (0.0, 0.3, 0.2, 0.9), (0.5, 0.5, 0.3, 0.3)],
    )
    def test_normalization_by_quadrature(self, theta_star, phi_star, sigma, x):
        # Tensor Gauss-Legendre over a +/- 7 marginal-sigma box; the Gaussian
        # mass outside that box is ~5e-12, so 1e-9 is attainable (it is not
        # over a 6-sigma box, whose tail alone is ~4e-9).
        params = ChannelParams(theta_star, phi_star, sigma, x)
        half = 7.0 * params.marginal_std
        t, w = np.polynomial.legendre.leggauss(220)
        th = theta_star + half * t
        ph = phi_star + half * t
        grid_t, grid_p = np.meshgrid(th, ph, indexing="ij")
        integral = (half * w) @ pdf(params, grid_t, grid_p) @ (half * w)
        assert abs(integral - 1.0) <= 1e-9

    def test_degenerate_correlation_rejected(self):
        with pytest.raises(ParameterError):
            pdf(ChannelParams(0.0, 0.0, 0.1, 1.0), 0.0, 0.0)

    def test_pdf_nonnegative_on_grid(self):
        params = ChannelParams(0.1, -0.2, 0.2, 0.7)
        th = np.linspace(-2.0, 2.0, 41)
        vals = pdf(params, th[:, None], th[None, :])
        assert np.all(vals >= 0.0)


class TestSample:
    def test_same_seed_same_sequence(self):
        params = ChannelParams(0.1, 0.2, 0.15, 0.4)
        first = sample(params, 42, 500)
        second = sample(params, 42, 500)
        np.testing.assert_array_equal(first, second)

    def test_different_seed_differs(self):
        params = ChannelParams(0.0, 0.0, 0.1, 0.0)
        assert not np.array_equal(sample(params, 1, 100), sample(params, 2, 100))

    def test_marginal_variance_matches(self):
        # Sample variance of theta -> sigma^2 within 4 standard errors.
        n = 10**6
        params = ChannelParams(0.0, 0.0, 0.1, 0.0)
        theta = sample(params, 11, n)[:, 0]
        var = float(np.var(theta, ddof=1))
        se = 0.01 * math.sqrt(2.0 / (n - 1))  # SE of a normal variance estimate
        assert abs(var - 0.01) <= 4.0 * se

    def test_correlation_matches(self):
        n = 10**6
        params = ChannelParams(0.0, 0.0, 0.1, 0.8)
        draws = sample(params, 12, n)
        corr = float(np.corrcoef(draws[:, 0], draws[:, 1])[0, 1])
        se = (1.0 - 0.8**2) / math.sqrt(n)
        assert abs(corr - 0.8) <= 4.0 * se

    def test_mean_offsets_respected(self):
        draws = sample(ChannelParams(0.4, -0.3, 0.05, 0.2), 5, 200_000)
        assert float(np.mean(draws[:, 0])) == pytest.approx(0.4, abs=5e-4)
        assert float(np.mean(draws[:, 1])) == pytest.approx(-0.3, abs=5e-4)

    def test_x_too_close_to_one_rejected(self):
        with pytest.raises(ParameterError):
            sample(ChannelParams(0.0, 0.0, 0.1, 1.0 - 1e-10), 0, 10)

    def test_zero_count_rejected(self):
        with pytest.raises(ParameterError):
            sample(ChannelParams(0.0, 0.0, 0.1, 0.0), 0, 0)


class TestMomentsClosedForm:
    def test_reference_point_values(self):
        # Frozen from the Gauss-Hermite oracle at theta*=phi*=0, sigma=0.1, x=0;
        # also equal to products of 1-D averages there.
        m = moments_closed_form(ChannelParams(0.0, 0.0, 0.1, 0.0))
        assert m.a == pytest.approx(0.9802966964414584, abs=1e-12)
        assert m.b == pytest.approx(0.009802640211919206, abs=1e-12)
        assert m.c == 0.0
        assert m.d == pytest.approx(0.9900498337491681, abs=1e-12)
        assert m.e == 0.0
        assert m.epsilon == pytest.approx(0.009900663346622374, abs=1e-12)

    def test_sigma_to_zero_limits(self):
        m = moments_closed_form(ChannelParams(0.0, 0.0, 1e-6, 0.0))
        assert m.a == pytest.approx(1.0, abs=1e-11)
        assert m.d == pytest.approx(1.0, abs=1e-11)
        assert abs(m.b) <= 1e-11

    @pytest.mark.parametrize("sigma", [0.1, 0.2, 0.3])
    def test_odd_moments_vanish_at_zero_means_or_zero_correlation(self, sigma):
        # c and e vanish at theta* = 0 provided phi* = 0 or x = 0.  With
        # both phi* and x nonzero the correlation tilts the conditional
        # mean of theta, so the odd moments survive; the quadrature and
        # Monte-Carlo oracles both confirm this.
        for x in (0.0, 0.5, 1.0):
            m = moments_closed_form(ChannelParams(0.0, 0.0, sigma, x))
            assert m.c == 0.0 and m.e == 0.0
        m = moments_closed_form(ChannelParams(0.0, 0.4, sigma, 0.0))
        assert m.c == 0.0 and m.e == 0.0
        m = moments_closed_form(ChannelParams(0.0, 0.4, sigma, 0.5))
        quad = moments_oracle(ChannelParams(0.0, 0.4, sigma, 0.5), effort=48)
        assert m.c == pytest.approx(quad.c, abs=1e-10)
        assert m.e == pytest.approx(quad.e, abs=1e-10)
        assert abs(m.c) > 0.0 and abs(m.e) > 0.0

    def test_sum_rule_exact(self):
        rng = np.random.default_rng(0)
        for _ in range(300):
            params = ChannelParams(
                theta_star=float(rng.uniform(-1.0, 1.0)),
                phi_star=float(rng.uniform(-1.0, 1.0)),
                sigma=float(rng.uniform(0.01, 0.5)),
                x=float(rng.uniform(0.0, 1.0)),
            )
            m = moments_closed_form(params)
            assert abs(m.a + m.b + m.epsilon - 1.0) <= 1e-12
            assert m.a >= 0.0 and m.b >= 0.0
            assert 0.0 <= m.epsilon <= 1.0
            assert abs(m.c) <= 1.0 and abs(m.d) <= 1.0 and abs(m.e) <= 1.0

    def test_factorization_at_zero_correlation(self):
        # At x = 0 each moment is the product of 1-D Gaussian averages.
        rng = np.random.default_rng(1)
        for _ in range(100):
            t, f = rng.uniform(-1.0, 1.0, size=2)
            s = float(rng.uniform(0.02, 0.4))
            m = moments_closed_form(ChannelParams(t, f, s, 0.0))
            e2 = math.exp(-2.0 * s * s)
            e1 = math.exp(-0.5 * s * s)
            cos2t_avg = 0.5 * (1.0 + e2 * math.cos(2 * t))
            cos2f_avg = 0.5 * (1.0 + e2 * math.cos(2 * f))
            sin2t_avg = 0.5 * (1.0 - e2 * math.cos(2 * t))
            assert m.a == pytest.approx(cos2t_avg * cos2f_avg, abs=1e-12)
            assert m.b == pytest.approx(sin2t_avg * cos2f_avg, abs=1e-12)
            assert m.c == pytest.approx(e2 * math.sin(2 * t) * cos2f_avg, abs=1e-12)
            assert m.d == pytest.approx(e1 * math.cos(t) * e1 * math.cos(f), abs=1e-12)
            assert m.e == pytest.approx(e1 * math.sin(t) * e1 * math.cos(f), abs=1e-12)
            assert m.epsilon == pytest.approx(0.5 * (1.0 - e2 * math.cos(2 * f)), abs=1e-12)

    def test_epsilon_nondecreasing_in_x(self):
        for sigma in (0.05, 0.15, 0.3):
            eps = [
                moments_closed_form(ChannelParams(0.0, 0.0, sigma, x)).epsilon
                for x in np.arange(0.0, 0.999, 0.05)
            ]
            assert all(later >= earlier - 1e-15 for earlier, later in zip(eps, eps[1:]))

    def test_x_equal_one_finite_limits(self):
        m = moments_closed_form(ChannelParams(0.3, 0.2, 0.25, 1.0))
        for value in (m.a, m.b, m.c, m.d, m.e, m.epsilon):
            assert math.isfinite(value)
        assert m.epsilon == 0.5
        # Continuity: x just below 1 gives nearly the same values.
        near = moments_closed_form(ChannelParams(0.3, 0.2, 0.25, 1.0 - 1e-12))
        assert m.max_abs_difference(near) <= 1e-9


class TestMomentsOracle:
    def test_quadrature_matches_closed_form(self):
        params = ChannelParams(0.0, 0.0, 0.1, 0.5)
        closed = moments_closed_form(params)
        quad = moments_oracle(params, method="quadrature", effort=40)
        assert closed.max_abs_difference(quad) <= 1e-10

    def test_quadrature_matches_with_nonzero_means(self):
        params = ChannelParams(0.3, 0.3, 0.3, 0.9)
        closed = moments_closed_form(params)
        quad = moments_oracle(params, method="quadrature", effort=48)
        assert closed.max_abs_difference(quad) <= 1e-10

    def test_monte_carlo_within_four_standard_errors(self):
        params = ChannelParams(0.0, 0.0, 0.2, 0.3)
        closed = moments_closed_form(params)
        est, err = monte_carlo_moments(params, 10**6, seed=7)
        for name in ("a", "b", "c", "d", "e", "epsilon"):
            gap = abs(getattr(closed, name) - getattr(est, name))
            assert gap <= 4.0 * max(getattr(err, name), 1e-15)

    def test_quarter_turn_mean_angle_point(self):
        # E[sin(theta) cos(phi)] at theta*=pi/4, phi*=0, sigma=0.05, x=0 equals
        # exp(-sigma^2) sin(pi/4); value frozen from the quadrature oracle.
        params = ChannelParams(math.pi / 4.0, 0.0, 0.05, 0.0)
        closed = moments_closed_form(params)
        quad = moments_oracle(params, method="quadrature", effort=40)
        expected = math.exp(-0.0025) * math.sin(math.pi / 4.0)
        assert expected == pytest.approx(0.7053412221019987, abs=1e-15)
        assert closed.e == pytest.approx(expected, abs=1e-12)
        assert quad.e == pytest.approx(expected, abs=1e-10)

    def test_minimum_effort_enforced(self):
        params = ChannelParams(0.0, 0.0, 0.1, 0.0)
        with pytest.raises(ParameterError):
            moments_oracle(params, method="quadrature", effort=4)
        with pytest.raises(ParameterError):
            moments_oracle(params, method="monte_carlo", effort=100)

    def test_unknown_method_rejected(self):
        with pytest.raises(ParameterError):
            moments_oracle(ChannelParams(0.0, 0.0, 0.1, 0.0), method="simpson")

    def test_grid_weights_sum_to_one(self):
        _, _, w = gauss_hermite_grid(ChannelParams(0.0, 0.0, 0.2, 0.6), 24)
        assert float(np.sum(w)) == pytest.approx(1.0, abs=1e-13)


class TestDistributionDistance:
    def test_zero_at_zero_correlation(self):
        params = ChannelParams(0.0, 0.0, 0.1, 0.0)
        th = np.linspace(-0.5, 0.5, 11)
        assert np.max(distribution_distance(params, th[:, None], th[None, :])) == 0.0

    def test_zero_on_mean_theta_line(self):
        params = ChannelParams(0.2, -0.1, 0.1, 0.7)
        for phi in (-0.5, 0.0, 0.3):
            assert distribution_distance(params, 0.2, phi) == 0.0

    def test_increasing_in_x_at_fixed_offset_product(self):
        # (theta - theta*)(phi - phi*) = sigma^2, so the gap factor is
        # |1 - exp(-x/2)|, strictly increasing on [0, 0.9].
        sigma = 0.1
        values = [
            distribution_distance(ChannelParams(0.0, 0.0, sigma, x), sigma, sigma)
            for x in np.arange(0.0, 0.90001, 0.1)
        ]
        assert all(later > earlier for earlier, later in zip(values, values[1:]))

    def test_rejected_at_degenerate_correlation(self):
        with pytest.raises(ParameterError):
            distribution_distance(ChannelParams(0.0, 0.0, 0.1, 1.0), 0.1, 0.1)


class TestGaussianMomentsRecord:
    def test_max_abs_difference(self):
        m1 = GaussianMoments(0.5, 0.25, 0.0, 0.9, 0.0, 0.25)
        m2 = GaussianMoments(0.5, 0.25, 0.0, 0.7, 0.0, 0.25)
        assert m1.max_abs_difference(m2) == pytest.approx(0.2)
