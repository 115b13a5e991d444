"""
test_rho_integral.py
####################

Unit tests for the I_rho line integral, its Bessel-function oracle and the large-argument
expansion with calibrated coefficients.
"""

import math
import unittest

import numpy as np

from vlab.core.catalog import preset
from vlab.core.errors import AsymptoticThresholdError, CalibrationError, ContourError
from vlab.core.rho_integral import (
    asymptotic_constants,
    asymptotic_error_envelope,
    calibrate_asymptotic_coefficients,
    check_decay,
    i_rho_asymptotic,
    i_rho_bessel_oracle,
    i_rho_quadrature,
    i_rho_values,
    stationary_height,
)


class TestIRhoQuadrature(unittest.TestCase):
    """Test cases for the I_rho line integral."""

    def setUp(self):
        self.fe = preset("r2").fe

    def test_bessel_oracle(self):
        """Test I(y) = y^-(delta+rho)/2 J_(delta+rho)(2 sqrt y) for a single Gamma(s) block."""
        for y in (0.5, 3.0, 20.0, 150.0):
            with self.subTest(y=y):
                value = i_rho_quadrature(self.fe, 1.0, 1.25, y)
                self.assertLess(abs(value.value - i_rho_bessel_oracle(1.0, 1.0, y)), 1e-9)
                self.assertLess(value.error, 1e-8)

    def test_batched_values_match_single(self):
        """Test that grouped evaluation agrees with one-at-a-time evaluation."""
        ys = np.array([40.0, 0.7, 9.0, 300.0])
        values, _ = i_rho_values(self.fe.sig, 1.0, 2.0, 1.25, ys)
        for y, value in zip(ys, values):
            self.assertLess(abs(value - i_rho_bessel_oracle(1.0, 2.0, float(y))), 1e-10)

    def test_decay_condition(self):
        """Test that rho <= (2a - delta) d' - 1 raises ContourError."""
        with self.assertRaises(ContourError):
            check_decay(self.fe.sig, 1.0, 0.4, 1.25)
        with self.assertRaises(ContourError):
            i_rho_values(self.fe.sig, 1.0, 0.5, 1.25, [2.0])

    def test_rejects_non_positive_arguments(self):
        """Test that y <= 0 is rejected."""
        with self.assertRaises(ValueError):
            i_rho_values(self.fe.sig, 1.0, 1.0, 1.25, [1.0, -1.0])

    def test_stationary_height(self):
        """Test t* = sqrt(y) for a single Gamma(s) block."""
        self.assertAlmostEqual(stationary_height(self.fe.sig, 100.0), 10.0, places=12)


class TestAsymptoticExpansion(unittest.TestCase):
    """Test cases for the large-argument expansion of x^(rho + delta) I(x)."""

    def setUp(self):
        self.fe = preset("r2").fe

    def test_leading_constants(self):
        """Test A_0 = 1/sqrt(pi), frequency 2 sqrt x and exponent (delta + rho)/2 - 1/4."""
        constants = asymptotic_constants(self.fe.sig, 1.0, 1.0)
        self.assertAlmostEqual(abs(constants.amplitude0() - 1.0 / math.sqrt(math.pi)), 0.0, places=12)
        self.assertAlmostEqual(constants.frequency(25.0), 10.0, places=12)
        self.assertAlmostEqual(constants.exponent(0).real, 0.75, places=14)

    def test_calibrated_first_correction(self):
        """Test the fitted A_1 against (4 nu^2 - 1)/16 A_0 with nu = 2."""
        calibration = calibrate_asymptotic_coefficients(self.fe, 1.0, 1, 1.25)
        expected = 15.0 / 16.0 / math.sqrt(math.pi)
        self.assertLess(abs(calibration.amplitudes[0] - expected), 0.1 * expected)
        self.assertEqual(calibration.x_range, (50.0, 400.0))

    def test_one_correction_is_within_five_percent(self):
        """Test that m = 1 tracks the quadrature to 5% over one period from x = 50."""
        self.assertLess(asymptotic_error_envelope(self.fe, 1.0, 50.0, m=1), 0.05)

    def test_leading_term_error_decreases(self):
        """Test that the m = 0 error envelope strictly shrinks at each doubling of x from 50 to 800."""
        xs = (50.0, 100.0, 200.0, 400.0, 800.0)
        envelopes = [asymptotic_error_envelope(self.fe, 1.0, x, m=0) for x in xs]
        for x, current, following in zip(xs, envelopes, envelopes[1:]):
            with self.subTest(x=x):
                self.assertLess(following, current)

    def test_evaluation_terms(self):
        """Test that the evaluation lists one row per expansion term."""
        evaluation = i_rho_asymptotic(self.fe, 1.0, 100.0, m=1)
        self.assertEqual([row["n"] for row in evaluation.terms], [0, 1])
        self.assertAlmostEqual(abs(evaluation.value - sum(row["value"] for row in evaluation.terms) - evaluation.smooth),
                               0.0, places=12)

    def test_threshold(self):
        """Test that x below the threshold raises AsymptoticThresholdError."""
        with self.assertRaises(AsymptoticThresholdError):
            i_rho_asymptotic(self.fe, 1.0, 5.0)

    def test_calibration_order_limit(self):
        """Test that m above the calibrated order raises CalibrationError."""
        with self.assertRaises(CalibrationError):
            calibrate_asymptotic_coefficients(self.fe, 1.0, 3, 1.25)


if __name__ == "__main__":
    unittest.main()
