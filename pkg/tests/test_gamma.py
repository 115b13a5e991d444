"""
test_gamma.py
#############

Unit tests for log Gamma, Gamma products, scaled complex numbers and Gamma signatures.
"""

import math
import unittest

import numpy as np
from scipy import integrate, special

from vlab.core.errors import GammaPoleError, GammaRangeError
from vlab.core.gamma import (
    GammaRatio,
    GammaSignature,
    ScaledComplex,
    f_alpha_beta,
    gamma_magnitude_estimate,
    gamma_product,
    lanczos_log_gamma,
    log_gamma,
    stirling_log_gamma,
)


class TestLogGamma(unittest.TestCase):
    """Test cases for the principal branch of log Gamma."""

    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_integer_value(self):
        """Test log Gamma(5) = log 24."""
        self.assertAlmostEqual(log_gamma(5.0).real, 3.17805383, places=8)
        self.assertAlmostEqual(log_gamma(5.0).imag, 0.0, places=14)

    def test_against_scipy_right_half_plane(self):
        """Test log_gamma against scipy.special.loggamma on random points with Re z > 0."""
        z = self.rng.uniform(0.1, 30.0, 200) + 1j * self.rng.uniform(-60.0, 60.0, 200)
        ours = log_gamma(z)
        reference = special.loggamma(z)
        np.testing.assert_allclose(ours, reference, rtol=1e-12, atol=1e-10)

    def test_against_scipy_reflection_region(self):
        """Test the reflected branch for Re z < 0 off the real axis."""
        z = self.rng.uniform(-8.0, 0.0, 150) + 1j * self.rng.uniform(0.5, 10.0, 150)
        z = np.concatenate([z, np.conj(z)])
        np.testing.assert_allclose(log_gamma(z), special.loggamma(z), rtol=1e-12, atol=1e-9)

    def test_array_shape_is_kept(self):
        """Test that array input keeps its shape and scalar input returns a complex."""
        grid = np.linspace(1.0, 4.0, 6).reshape(2, 3)
        self.assertEqual(log_gamma(grid).shape, (2, 3))
        self.assertIsInstance(log_gamma(2.5), complex)

    def test_lanczos_and_stirling_agree_in_overlap(self):
        """Test that both approximations give the same Gamma value where their ranges overlap."""
        z = self.rng.uniform(0.5, 6.0, 100) + 1j * self.rng.uniform(15.0, 25.0, 100)
        difference = np.exp(np.asarray(lanczos_log_gamma(z)) - np.asarray(stirling_log_gamma(z)))
        np.testing.assert_allclose(difference, np.ones_like(difference), atol=1e-11)

    def test_poles_are_rejected(self):
        """Test that non-positive integers raise GammaPoleError."""
        for z in (0.0, -3.0, -3.0 + 1e-10, -7.0 - 5e-9j):
            with self.assertRaises(GammaPoleError):
                log_gamma(z)

    def test_near_pole_outside_guard(self):
        """Test that points just outside the guard radius are evaluated."""
        value = log_gamma(-2.0 + 1e-6)
        self.assertAlmostEqual(value.real, special.loggamma(-2.0 + 1e-6 + 0j).real, places=6)

    def test_non_principal_branch_exponentiates_correctly(self):
        """Test that principal=False gives the right Gamma value."""
        z = np.array([0.3 + 12.0j, -2.5 + 3.0j, 4.0 - 18.0j])
        np.testing.assert_allclose(np.exp(log_gamma(z, principal=False)), special.gamma(z), rtol=1e-11)

    def test_reflection_formula(self):
        """Test log Gamma(z) + log Gamma(1 - z) = log(pi / sin(pi z)) mod 2 pi i for 0 < Re z < 1."""
        z = self.rng.uniform(0.02, 0.98, 100) + 1j * self.rng.uniform(-20.0, 20.0, 100)
        difference = log_gamma(z) + log_gamma(1.0 - z) - np.log(np.pi / np.sin(np.pi * z))
        wrapped = difference.imag - 2.0 * np.pi * np.round(difference.imag / (2.0 * np.pi))
        self.assertLess(np.max(np.abs(difference.real)), 1e-10)
        self.assertLess(np.max(np.abs(wrapped)), 1e-10)

    def test_recurrence(self):
        """Test log Gamma(z + 1) - log Gamma(z) - log z = 0 mod 2 pi i for |z| <= 20."""
        radius = self.rng.uniform(0.5, 20.0, 400)
        z = radius * np.exp(1j * self.rng.uniform(-np.pi, np.pi, 400))
        nearest_pole = np.minimum(np.round(z.real), 0.0)
        z = z[(z.real > 0.5) | (np.abs(z - nearest_pole) > 0.1)][:100]
        self.assertEqual(len(z), 100)
        upper = log_gamma(z + 1.0)
        difference = upper - log_gamma(z) - np.log(z)
        wrapped = difference.imag - 2.0 * np.pi * np.round(difference.imag / (2.0 * np.pi))
        error = np.abs(difference.real + 1j * wrapped) / np.maximum(1.0, np.abs(upper))
        self.assertLess(np.max(error), 1e-12)


class TestGammaProduct(unittest.TestCase):
    """Test cases for prod Gamma(alpha_i s + beta_i)."""

    def test_duplication_formula(self):
        """Test Gamma(s/2) Gamma(s/2 + 1/2) = 2^(1-s) sqrt(pi) Gamma(s)."""
        sig = GammaSignature.of([0.5, 0.5], [0.0, 0.5])
        for s in (1.5, 3.0 + 2.0j, 0.7 - 4.0j):
            product = gamma_product(sig, s).to_complex()
            expected = 2 ** (1 - s) * math.sqrt(math.pi) * special.gamma(s)
            self.assertAlmostEqual(abs(product - expected) / abs(expected), 0.0, places=11)

    def test_pole_reports_factor_index(self):
        """Test that a pole of the second factor is tagged with index 1."""
        sig = GammaSignature.of([1.0, 0.5], [0.5, 0.0])
        with self.assertRaises(GammaPoleError) as context:
            gamma_product(sig, -2.0)
        self.assertEqual(context.exception.factor_index, 1)

    def test_large_product_stays_representable(self):
        """Test that a product far above the double range is kept as a ScaledComplex."""
        sig = GammaSignature.of([1.0, 1.0], [0.0, 0.0])
        scaled = gamma_product(sig, 200.0)
        self.assertAlmostEqual(scaled.log().real, 2.0 * special.gammaln(200.0), places=8)
        with self.assertRaises(GammaRangeError):
            scaled.to_complex()


class TestScaledComplex(unittest.TestCase):
    """Test cases for ScaledComplex arithmetic."""

    def test_normalised_mantissa(self):
        """Test that the mantissa lies in [1, 2)."""
        value = ScaledComplex(12.0 + 5.0j)
        self.assertTrue(1.0 <= abs(value.mantissa) < 2.0)
        self.assertAlmostEqual(abs(value.to_complex() - (12.0 + 5.0j)), 0.0, places=12)

    def test_multiplication_and_division(self):
        """Test exp(800) * exp(-790) = exp(10) without overflow."""
        big = ScaledComplex.from_log(800.0)
        small = ScaledComplex.from_log(-790.0)
        self.assertAlmostEqual((big * small).to_complex().real / math.exp(10.0), 1.0, places=12)
        self.assertAlmostEqual((big / ScaledComplex.from_log(795.0)).to_complex().real / math.exp(5.0), 1.0, places=12)

    def test_conjugate_and_zero(self):
        """Test conjugation and the zero value."""
        value = ScaledComplex.from_log(1.0 + 0.5j)
        self.assertAlmostEqual(abs(value.conjugate().to_complex() - np.exp(1.0 - 0.5j)), 0.0, places=12)
        self.assertTrue(ScaledComplex(0j).is_zero())
        with self.assertRaises(ZeroDivisionError):
            value / ScaledComplex(0j)

    def test_overflow_raises(self):
        """Test that to_complex raises outside the double range."""
        with self.assertRaises(GammaRangeError):
            ScaledComplex.from_log(1000.0).to_complex()


class TestGammaSignature(unittest.TestCase):
    """Test cases for GammaSignature validation and derived quantities."""

    def test_degree(self):
        """Test d' = sum alpha_i."""
        self.assertEqual(GammaSignature.of([0.5, 1.5], [0.0, 0.0]).dprime, 2.0)

    def test_strict_rejects_negative_beta(self):
        """Test that strict signatures need Re(beta_i) >= 0."""
        with self.assertRaises(ValueError):
            GammaSignature.of([0.5, 0.5], [0.0, -0.25])
        relaxed = GammaSignature.of([0.5, 0.5], [0.0, -0.25], strict=False)
        self.assertEqual(relaxed.r, 2)

    def test_invalid_alphas(self):
        """Test that non-positive alphas and mismatched lengths are rejected."""
        with self.assertRaises(ValueError):
            GammaSignature.of([0.0], [0.0])
        with self.assertRaises(ValueError):
            GammaSignature.of([1.0, 2.0], [0.0])
        with self.assertRaises(ValueError):
            GammaSignature.of([], [])

    def test_conjugate(self):
        """Test that conjugation flips the imaginary parts of the betas."""
        sig = GammaSignature.of([1.0], [0.3 + 0.2j])
        self.assertEqual(sig.conjugate().betas, (0.3 - 0.2j,))
        self.assertFalse(sig.real_betas)

    def test_scale(self):
        """Test prod alpha_i^alpha_i."""
        sig = GammaSignature.of([0.5, 2.0], [0.0, 0.0])
        self.assertAlmostEqual(sig.scale(), 0.5**0.5 * 4.0, places=12)


class TestElementaryKernel(unittest.TestCase):
    """Test cases for f_alpha_beta, the closed form of the single-factor Z kernel."""

    def test_reference_value(self):
        """Test f(1/2, 1/2, 2) = 4 e^-4."""
        self.assertAlmostEqual(f_alpha_beta(0.5, 0.5, 2.0).real, 4.0 * math.exp(-4.0), places=12)

    def test_mellin_transform(self):
        """Test int f x^(s-1) dx = Gamma(s/2 + 1/2) at s = 2."""
        value, _ = integrate.quad(lambda x: f_alpha_beta(0.5, 0.5, x).real * x, 0.0, np.inf, epsabs=1e-13)
        self.assertAlmostEqual(value, math.sqrt(math.pi) / 2.0, places=9)

    def test_rejects_non_positive_arguments(self):
        """Test that x <= 0 and alpha <= 0 are rejected."""
        with self.assertRaises(ValueError):
            f_alpha_beta(1.0, 0.0, 0.0)
        with self.assertRaises(ValueError):
            f_alpha_beta(-1.0, 0.0, 1.0)


class TestMagnitudeAndRatio(unittest.TestCase):
    """Test cases for the Stirling magnitude estimate and Gamma ratios."""

    def test_magnitude_estimate_within_factor(self):
        """Test that the estimate is within a factor 2 of |prod Gamma| for |t| >= 10."""
        sig = GammaSignature.of([0.5, 1.0], [0.0, 0.5])
        for a in (0.5, 1.0, 2.5):
            for t in (10.0, 25.0, 80.0):
                exact = abs(gamma_product(sig, complex(a, t)).to_complex())
                ratio = gamma_magnitude_estimate(sig, a, t) / exact
                self.assertTrue(0.5 <= ratio <= 2.0, f"a={a}, t={t}, ratio={ratio}")

    def test_magnitude_estimate_outside_range_is_logged(self):
        """Test that a large real part at t = 10 is flagged at debug level."""
        sig = GammaSignature.of([1.0], [0.0])
        with self.assertLogs("vlab.core.gamma", level="DEBUG") as captured:
            gamma_magnitude_estimate(sig, 12.0, 10.0)
        self.assertIn("off by more than a factor", captured.output[0])

    def test_ratio_value(self):
        """Test Gamma(s) / Gamma(s + 2) = 1 / (s (s + 1))."""
        ratio = GammaRatio(terms=((1, 1.0, 0.0), (-1, 1.0, 2.0)))
        s = 1.5 + 2.0j
        self.assertAlmostEqual(abs(np.exp(ratio.log_value(s)) - 1.0 / (s * (s + 1.0))), 0.0, places=12)

    def test_ratio_right_poles(self):
        """Test the real parts of the poles of Gamma(3 - s) right of a line."""
        ratio = GammaRatio(terms=((1, -1.0, 3.0),))
        poles = ratio.right_poles(6.5)
        self.assertEqual(tuple(round(p, 12) for p in poles)[:4], (3.0, 4.0, 5.0, 6.0))


if __name__ == "__main__":
    unittest.main()
