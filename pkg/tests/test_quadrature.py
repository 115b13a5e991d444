"""
test_quadrature.py
##################

Unit tests for the panel rules, circle quadrature, integration-by-parts tails and exact summation.
"""

import math
import unittest

import mpmath
import numpy as np
from scipy import special

from vlab.core.errors import ContourError, ResidueError
from vlab.core.quadrature import (
    adaptive_edges,
    compensated_sum,
    graded_edges,
    ibp_tail,
    laurent_coefficients,
    panel_rule,
)


class TestPanelRules(unittest.TestCase):
    """Test cases for composite Gauss-Legendre rules."""

    def test_integrates_exponential(self):
        """Test int_0^3 e^-t dt on two panels."""
        rule = panel_rule([0.0, 1.0, 3.0], 20)
        value = float(np.sum(rule.weights * np.exp(-rule.nodes)))
        self.assertAlmostEqual(value, 1.0 - math.exp(-3.0), places=14)
        half = float(np.sum(rule.half_weights * np.exp(-rule.half_nodes)))
        self.assertAlmostEqual(half, 1.0 - math.exp(-3.0), places=10)
        self.assertEqual(rule.size, 2 * 20 + 2 * 10)

    def test_rejects_unsorted_edges(self):
        """Test that edges must increase strictly."""
        with self.assertRaises(ValueError):
            panel_rule([0.0, 2.0, 1.0])

    def test_graded_edges_cover_interval(self):
        """Test that graded edges start at 0, end at t_max and increase."""
        edges = graded_edges(10.0, 8, 0.25)
        self.assertEqual(edges.size, 9)
        self.assertEqual(edges[0], 0.0)
        self.assertEqual(edges[-1], 10.0)
        self.assertTrue(np.all(np.diff(edges) > 0.0))
        self.assertAlmostEqual(edges[1], 0.25, places=12)

    def test_adaptive_edges_respect_phase_rate(self):
        """Test that interior panels keep the node density for a constant phase rate."""
        edges = adaptive_edges(lambda t: 10.0, 5.0, 0.1)
        widths = np.diff(edges)
        self.assertEqual(edges[0], 0.0)
        self.assertEqual(edges[-1], 5.0)
        limit = 2.0 * math.pi * 20 / (24 * 10.0)
        self.assertTrue(np.all(widths[:-1] <= limit + 1e-12))

    def test_adaptive_edges_panel_limit(self):
        """Test that a runaway layout raises ContourError."""
        with self.assertRaises(ContourError):
            adaptive_edges(lambda t: 1e6, 100.0, 0.1, max_panels=50)


class TestLaurentCoefficients(unittest.TestCase):
    """Test cases for Cauchy-FFT Laurent coefficients."""

    def test_simple_pole(self):
        """Test the coefficients of 1/(s - 1) + 2 + 3 (s - 1)."""
        coefficients = laurent_coefficients(lambda s: 1.0 / (s - 1.0) + 2.0 + 3.0 * (s - 1.0), 1.0, 0.1, -1, 1)
        self.assertAlmostEqual(abs(coefficients[-1] - 1.0), 0.0, places=12)
        self.assertAlmostEqual(abs(coefficients[0] - 2.0), 0.0, places=12)
        self.assertAlmostEqual(abs(coefficients[1] - 3.0), 0.0, places=10)

    def test_gamma_at_zero(self):
        """Test Gamma(s) = 1/s - gamma_E + O(s)."""
        coefficients = laurent_coefficients(special.gamma, 0.0, 0.1, -1, 0)
        self.assertAlmostEqual(abs(coefficients[-1] - 1.0), 0.0, places=11)
        self.assertAlmostEqual(abs(coefficients[0] + 0.5772156649015329), 0.0, places=10)

    def test_double_pole(self):
        """Test the principal part of Gamma(s)^2 at s = 0."""
        coefficients = laurent_coefficients(lambda s: special.gamma(s) ** 2, 0.0, 0.1, -2, -1)
        self.assertAlmostEqual(abs(coefficients[-2] - 1.0), 0.0, places=10)
        self.assertAlmostEqual(abs(coefficients[-1] + 2.0 * 0.5772156649015329), 0.0, places=9)

    def test_nearby_singularity_is_reported(self):
        """Test that a non-finite sample on the circle raises ResidueError."""
        with self.assertRaises(ResidueError):
            laurent_coefficients(lambda s: np.where(np.abs(s - 0.1) < 1e-12, np.inf, 1.0 / s), 0.0, 0.1, -1, 0)


class TestIntegrationByPartsTail(unittest.TestCase):
    """Test cases for the asymptotic tail of an oscillatory vertical-line integral."""

    def test_oscillatory_tail(self):
        """Test int_T^inf e^(i w t) / (a + i t)^2 dt against mpmath.quadosc."""
        a, omega, t_end = 1.5, 5.0, 50.0
        s = complex(a, t_end)
        g = np.exp(1j * omega * t_end) / s**2
        # log g(s) = omega (s - a) - 2 log s
        d1 = np.array([omega - 2.0 / s])
        d2 = 2.0 / s**2
        d3 = -4.0 / s**3
        value, error = ibp_tail(np.array([g]), d1, d2, d3, direction=1)
        reference = complex(
            mpmath.quadosc(lambda t: mpmath.exp(1j * omega * t) / (a + 1j * t) ** 2, [t_end, mpmath.inf], omega=omega)
        )
        self.assertLess(abs(complex(value[0]) - reference), 1e-11)
        self.assertLess(error[0], 1e-9)


class TestCompensatedSum(unittest.TestCase):
    """Test cases for exactly rounded summation."""

    def test_cancellation(self):
        """Test that 1e16 + 1 - 1e16 keeps the 1."""
        self.assertEqual(compensated_sum(np.array([1e16, 1.0, -1e16])), 1.0 + 0j)

    def test_order_independent(self):
        """Test that the result does not depend on the order of the terms."""
        rng = np.random.default_rng(3)
        values = rng.normal(size=1000) * 10.0 ** rng.integers(-8, 8, size=1000)
        values = values + 1j * rng.normal(size=1000)
        self.assertEqual(compensated_sum(values), compensated_sum(values[::-1]))


if __name__ == "__main__":
    unittest.main()
