"""
Tests for elliptic integrals, G, Bessel functions and the spherical transform.
"""

import math
from unittest.mock import patch

import numpy as np
import pytest
from scipy import integrate, special

from app.errors import DomainError, QuadratureError
from app.models import AnnulusSpec
from app.special import (
    G_asymptotic,
    G_function,
    G_prime,
    G_value,
    bessel_J,
    bessel_main_closed_form,
    bessel_main_integral,
    composite_gauss_legendre,
    elliptic_E,
    elliptic_K,
    legendre_conical,
    shc_asymptotic,
    shc_bound,
    shc_error_envelope,
    shc_legendre,
    shc_numeric,
    weight_H,
)

G_LOWER_CONSTANT = 0.5
HILB_CONSTANT = 1.0


def quad_K(k):
    return integrate.quad(lambda th: 1.0 / math.sqrt(1.0 - (k * math.sin(th)) ** 2), 0.0, math.pi / 2, epsabs=0, epsrel=1e-13)[0]


def quad_E(k):
    return integrate.quad(lambda th: math.sqrt(1.0 - (k * math.sin(th)) ** 2), 0.0, math.pi / 2, epsabs=0, epsrel=1e-13)[0]


class TestEllipticIntegrals:
    """Test K and E by the arithmetic-geometric mean."""

    def test_zero_modulus(self):
        """Test K(0) = E(0) = pi/2."""
        assert elliptic_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
        assert elliptic_E(0.0) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_half_modulus(self):
        """Test K(0.5) and E(0.5) against reference values."""
        assert elliptic_K(0.5) == pytest.approx(1.6857503548, abs=1e-10)
        assert elliptic_E(0.5) == pytest.approx(1.4674622093, abs=1e-10)

    def test_E_at_one(self):
        """Test E(1) = 1."""
        assert elliptic_E(1.0) == 1.0

    @pytest.mark.parametrize("k", [0.1, 0.3, 0.5, 0.7, 0.9, 0.99])
    def test_against_quadrature(self, k):
        """Test the AGM values against direct quadrature."""
        assert elliptic_K(k) == pytest.approx(quad_K(k), rel=1e-12)
        assert elliptic_E(k) == pytest.approx(quad_E(k), rel=1e-12)

    def test_against_scipy(self):
        """Test agreement with scipy's parameter convention m = k^2."""
        for k in np.linspace(0.0, 0.999, 40):
            assert elliptic_K(k) == pytest.approx(special.ellipk(k * k), rel=1e-13)
            assert elliptic_E(k) == pytest.approx(special.ellipe(k * k), rel=1e-13)

    def test_K_increasing(self):
        """Test K is increasing in k."""
        values = [elliptic_K(k) for k in np.linspace(0.0, 0.99, 50)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_domain(self):
        """Test moduli outside the domain are rejected."""
        with pytest.raises(DomainError, match=r"\[0, 1\)"):
            elliptic_K(1.0)
        with pytest.raises(DomainError, match=r"\[0, 1\]"):
            elliptic_E(1.5)
        with pytest.raises(DomainError):
            elliptic_K(-0.1)


class TestGFunction:
    """Test the annulus shape function G."""

    def test_G_zero(self):
        """Test G(0) = 1 exactly."""
        assert G_value(0.0) == 1.0
        assert G_function(0.0).value == 1.0

    def test_matches_definition(self):
        """Test the stable form equals 1 + w^3 + (1 - w^2) K - (1 + w^2) E at w = 0.5."""
        w = 0.5
        direct = 1 + w**3 + (1 - w * w) * quad_K(w) - (1 + w * w) * quad_E(w)
        assert G_value(w) == pytest.approx(direct, abs=1e-12)

    def test_near_one(self):
        """Test G / G_asymptotic decreases toward 1 as w approaches 1."""
        ratios = [G_value(1.0 - gap) / G_asymptotic(1.0 - gap) for gap in (1e-2, 1e-4, 1e-6)]
        assert ratios[0] == pytest.approx(1.536, abs=1e-3)
        assert ratios[1] == pytest.approx(1.2914, abs=1e-3)
        assert ratios[0] > ratios[1] > ratios[2] > 1.0
        assert ratios[2] < 1.21

    def test_monotone(self):
        """Test G is nonincreasing on a fine grid."""
        values = [G_value(w) for w in np.linspace(0.0, 0.999, 1000)]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))
        assert all(v > 0.0 for v in values)

    def test_lower_bound(self):
        """Test G(w) >= kappa (1 - w)^2 log(2 / (1 - w))."""
        for w in np.linspace(0.0, 0.9999, 500):
            gap = 1.0 - w
            assert G_value(w) >= G_LOWER_CONSTANT * gap * gap * math.log(2.0 / gap)

    def test_domain(self):
        """Test w outside [0, 1) is rejected."""
        with pytest.raises(DomainError, match="G is defined on"):
            G_value(1.0)
        with pytest.raises(DomainError):
            G_function(-0.2)

    def test_derivative_at_zero(self):
        """Test G'(0) = 0."""
        assert G_prime(0.0) == 0.0

    def test_derivative_matches_differences(self):
        """Test G' = 3 w (w - E(w)) against central differences."""
        h = 1e-6
        for w in np.linspace(0.001, 0.999, 100):
            numeric = (G_value(w + h) - G_value(w - h)) / (2 * h)
            assert G_prime(w) == pytest.approx(numeric, abs=1e-6)
            assert G_prime(w) <= 0.0


class TestBessel:
    """Test J0 and J1."""

    def test_origin(self):
        """Test J0(0) = 1 and J1(0) = 0."""
        assert bessel_J(0, 0.0) == 1.0
        assert bessel_J(1, 0.0) == 0.0

    def test_first_zero(self):
        """Test the first zero of J0."""
        assert bessel_J(0, 2.404825557695773) == pytest.approx(0.0, abs=1e-12)

    def test_recurrence(self):
        """Test (x J1)' = x J0 by central differences."""
        h = 1e-5
        for x in np.linspace(0.1, 50.0, 200):
            numeric = ((x + h) * bessel_J(1, x + h) - (x - h) * bessel_J(1, x - h)) / (2 * h)
            assert numeric == pytest.approx(x * bessel_J(0, x), abs=1e-8)

    def test_array_input(self):
        """Test arrays are evaluated elementwise."""
        x = np.array([0.0, 1.0, 2.0])
        values = bessel_J(0, x)
        assert isinstance(values, np.ndarray)
        assert values[0] == 1.0

    def test_other_orders(self):
        """Test only orders 0 and 1 are available."""
        with pytest.raises(DomainError, match="Only J0 and J1"):
            bessel_J(2, 1.0)


class TestWeightH:
    """Test the gamma-factor weight."""

    def test_at_zero(self):
        """Test H(0) = Gamma(1/4)^4 / pi."""
        assert weight_H(0.0) == pytest.approx(math.gamma(0.25) ** 4 / math.pi, rel=1e-12)
        assert weight_H(0.0) == pytest.approx(55.0014865, abs=1e-6)

    def test_large_t(self):
        """Test H(t) (|t| + 1) / 4 pi approaches 1."""
        assert weight_H(100.0) * 101.0 / (4.0 * math.pi) == pytest.approx(1.0, abs=0.011)

    def test_even(self):
        """Test H(t) = H(-t)."""
        for t in (0.3, 2.0, 17.5, 400.0):
            assert weight_H(t) == weight_H(-t)
            assert weight_H(t) > 0.0


class TestQuadratureRules:
    """Test composite Gauss-Legendre and the conical function."""

    def test_polynomial_exact(self):
        """Test the rule integrates x^5 exactly."""
        x, w = composite_gauss_legendre(0.0, 2.0, 3)
        assert float(np.sum(w * x**5)) == pytest.approx(64.0 / 6.0, rel=1e-14)

    def test_conical_at_origin(self):
        """Test P(1) = 1."""
        assert legendre_conical(0.0, 0.0) == 1.0
        assert legendre_conical(0.0, 1e-6) == pytest.approx(1.0, abs=1e-10)

    def test_conical_t_zero_is_elliptic(self):
        """Test P_{-1/2}(cosh rho) = (2/pi) K(tanh(rho/2)) / cosh(rho/2)."""
        for rho in (0.1, 0.5, 1.0, 3.0):
            expected = 2.0 / math.pi * elliptic_K(math.tanh(0.5 * rho)) / math.cosh(0.5 * rho)
            assert legendre_conical(0.0, rho) == pytest.approx(expected, rel=1e-10)

    def test_hilb(self):
        """Test Hilb's approximation at rho = 0.01, t = 50."""
        rho, t = 0.01, 50.0
        approx = math.sqrt(rho / math.sinh(rho)) * bessel_J(0, rho * t)
        assert abs(legendre_conical(t, rho) - approx) <= HILB_CONSTANT * rho * rho

    def test_self_convergence(self):
        """Test t = 1, rho = 0.5 against a rule with many more panels."""
        assert legendre_conical(1.0, 0.5) == pytest.approx(legendre_conical(1.0, 0.5, panels=40), rel=1e-8)

    def test_vectorised(self):
        """Test array rho matches scalar evaluation."""
        rho = np.array([0.0, 0.2, 0.9])
        values = legendre_conical(2.0, rho)
        assert values[1] == pytest.approx(legendre_conical(2.0, 0.2), rel=1e-12)

    def test_conical_domain(self):
        """Test rho outside [0, 10] is rejected."""
        with pytest.raises(DomainError, match="0 <= rho <= 10"):
            legendre_conical(1.0, 11.0)


class TestSphericalTransform:
    """Test the spherical transform of the annulus indicator."""

    def test_t_zero_is_volume(self):
        """Test h(0) of a small ball is its volume."""
        ann = AnnulusSpec(r=0.0, R=0.01)
        assert shc_numeric(ann, 0.0) == pytest.approx(ann.volume(), rel=1e-4)

    def test_even(self):
        """Test h(t) = h(-t)."""
        ann = AnnulusSpec(r=0.02, R=0.1)
        for t in (0.5, 7.0, 60.0):
            assert shc_numeric(ann, t) == shc_numeric(ann, -t)

    @pytest.mark.parametrize("r, R, t", [(0.0, 0.1, 0.0), (0.0, 0.1, 20.0), (0.05, 0.1, 3.0), (0.0, 0.5, 40.0), (0.3, 1.0, 12.0)])
    def test_routes_agree(self, r, R, t):
        """Test the Abel route against the conical-function route."""
        ann = AnnulusSpec(r=r, R=R)
        assert shc_numeric(ann, t) == pytest.approx(shc_legendre(ann, t), rel=1e-6, abs=1e-14)

    def test_against_asymptotic(self):
        """Test (r, R, t) = (0, 0.1, 20) is within the error envelope of the Bessel model."""
        ann = AnnulusSpec(r=0.0, R=0.1)
        gap = abs(shc_numeric(ann, 20.0) - shc_asymptotic(ann, 20.0))
        assert gap <= shc_error_envelope(0.1, 20.0)

    @pytest.mark.parametrize("R", [0.02, 0.05, 0.1])
    def test_envelope_and_bound_grid(self, R):
        """Test the envelope and the size bound over a range of t."""
        for ann in (AnnulusSpec(r=0.0, R=R), AnnulusSpec(r=0.5 * R, R=R)):
            for t in (0.0, 0.5 / R, 1.0 / R, 3.0 / R, 10.0 / R, 40.0 / R):
                h = shc_numeric(ann, t)
                assert abs(h - shc_asymptotic(ann, t)) <= shc_error_envelope(R, t)
                assert abs(h) <= shc_bound(R, t)

    def test_asymptotic_limits(self):
        """Test the Bessel model at t = 0 and for a ball."""
        ann = AnnulusSpec(r=0.03, R=0.1)
        assert shc_asymptotic(ann, 0.0) == pytest.approx(math.pi * (0.01 - 0.0009))
        ball = AnnulusSpec(r=0.0, R=0.1)
        t = 13.0
        assert shc_asymptotic(ball, t) == pytest.approx(2 * math.pi * 0.1 * special.j1(0.1 * t) / t)

    def test_asymptotic_requires_wide_annulus(self):
        """Test r > R/2 is rejected."""
        with pytest.raises(DomainError, match="r <= R/2"):
            shc_asymptotic(AnnulusSpec(r=0.08, R=0.1), 1.0)

    def test_non_convergence(self):
        """Test the panel doubling gives up with diagnostics."""
        with patch("app.special.transforms._abel_F", side_effect=lambda rho, t, panels: rho * panels):
            with pytest.raises(QuadratureError, match="did not converge") as excinfo:
                shc_numeric(AnnulusSpec(r=0.0, R=0.1), 5.0)
        assert excinfo.value.diagnostics["t"] == 5.0


class TestBesselMainTerm:
    """Test the Bessel main-term integral and its closed form."""

    def test_unit_ball(self):
        """Test r = 0, R = 1 gives 4 / 3 pi."""
        value = bessel_main_integral(AnnulusSpec(r=0.0, R=1.0))
        assert value == pytest.approx(4.0 / (3.0 * math.pi), rel=1e-6)
        assert value == pytest.approx(0.4244132, abs=1e-7)

    @pytest.mark.parametrize("w", [0.0, 0.25, 0.5, 0.75, 0.9])
    def test_closed_form(self, w):
        """Test the quadrature against 4 R^3 G(w) / 3 pi."""
        ann = AnnulusSpec(r=w * 0.1, R=0.1)
        assert bessel_main_integral(ann) == pytest.approx(bessel_main_closed_form(ann), rel=1e-6)

    def test_thin_limit(self):
        """Test the integral vanishes as r approaches R."""
        assert bessel_main_integral(AnnulusSpec(r=0.999, R=1.0)) < 1e-4
