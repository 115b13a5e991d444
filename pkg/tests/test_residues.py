"""
test_residues.py
################

Unit tests for pole enumeration and the residual functions P, Q_rho and P_1.
"""

import math
import unittest

import numpy as np

from vlab.core.catalog import preset
from vlab.core.errors import ResidueError
from vlab.core.poles import PoleSource, PoleSpec, ZeroLadder, zero_order
from vlab.core.residues import (
    ResidualKind,
    ResidualTerm,
    ResidualTermSum,
    default_line,
    enumerate_poles,
    laurent_principal_part,
    residual_P,
    residual_P1,
    residual_Q_rho,
    residual_terms,
    residue_numeric,
)


class TestPoleDeclarations(unittest.TestCase):
    """Test cases for PoleSpec and ZeroLadder."""

    def test_zero_ladder(self):
        """Test the trivial zeros of zeta."""
        ladder = ZeroLadder(-2.0, -2.0)
        self.assertEqual(ladder.order_at(-6.0), 1)
        self.assertEqual(ladder.order_at(-5.0), 0)
        self.assertEqual(ladder.order_at(0.0), 0)
        self.assertEqual(zero_order((ladder, ZeroLadder(-4.0, -4.0, 2)), -8.0), 3)

    def test_finite_ladder(self):
        """Test that count limits a ladder."""
        ladder = ZeroLadder(-1.0, -1.0, 1, count=2)
        self.assertEqual(ladder.order_at(-2.0), 1)
        self.assertEqual(ladder.order_at(-3.0), 0)

    def test_invalid(self):
        """Test that non-positive orders and zero steps are rejected."""
        with self.assertRaises(ValueError):
            PoleSpec(1.0, 0)
        with self.assertRaises(ValueError):
            ZeroLadder(0.0, 0.0)

    def test_describe(self):
        """Test the pole descriptions used in reports."""
        self.assertEqual(PoleSpec(0.0, 1, PoleSource.GAMMA_FACTOR, factor=0, k=0).describe(),
                         "0 (order 1, gamma_factor(0,0))")
        self.assertEqual(PoleSpec(1.0, 2).describe(), "1 (order 2, series_declared)")


class TestPoleEnumeration(unittest.TestCase):
    """Test cases for enumerate_poles."""

    def setUp(self):
        self.fe = preset("theta-zeta").fe

    def test_theta_strip(self):
        """Test that the trivial zeros of zeta cancel the Gamma(s/2) poles below 0."""
        poles = enumerate_poles(self.fe, (-5.0, 3.0), ResidualKind.P)
        self.assertEqual([p.location for p in poles], [1.0 + 0j, 0j])
        self.assertIs(poles[0].source, PoleSource.SERIES_DECLARED)
        self.assertIs(poles[1].source, PoleSource.GAMMA_FACTOR)

    def test_extra_gamma_merges(self):
        """Test that the extra Gamma(s) pole at 0 merges with the block pole into a double pole."""
        poles = enumerate_poles(self.fe, (-0.25, 1.25), ResidualKind.P1)
        at_zero = [p for p in poles if abs(p.location) < 1e-12]
        self.assertEqual(len(at_zero), 1)
        self.assertEqual(at_zero[0].order, 2)
        self.assertIs(at_zero[0].source, PoleSource.MERGED)

    def test_pole_on_edge(self):
        """Test that a pole on a strip edge raises ResidueError."""
        with self.assertRaises(ResidueError):
            enumerate_poles(self.fe, (0.0, 2.0), ResidualKind.P)

    def test_empty_strip(self):
        """Test that an empty strip is rejected."""
        with self.assertRaises(ValueError):
            enumerate_poles(self.fe, (1.0, 1.0), ResidualKind.P)


class TestNumericResidues(unittest.TestCase):
    """Test cases for residue_numeric and pole-order detection."""

    def test_simple_pole(self):
        """Test Res_{s=1} e^s/(s - 1) = e."""
        residue = residue_numeric(lambda s: np.exp(s) / (s - 1.0), PoleSpec(1.0, 1), 0.1)
        self.assertAlmostEqual(abs(residue - math.e), 0.0, places=10)

    def test_undeclared_order_is_detected(self):
        """Test that a double pole declared as simple is detected and logged."""
        with self.assertLogs("vlab.core.residues", level="WARNING"):
            principal, order = laurent_principal_part(lambda s: 1.0 / (s - 1.0) ** 2, PoleSpec(1.0, 1), 0.1)
        self.assertEqual(order, 2)
        self.assertAlmostEqual(abs(principal[-2] - 1.0), 0.0, places=10)
        self.assertAlmostEqual(abs(principal[-1]), 0.0, places=10)


class TestResidualFunctions(unittest.TestCase):
    """Test cases for P, Q_rho and P_1 against closed forms."""

    def test_default_line(self):
        """Test a = max(0, sigma_a, sigma_b) + 1/4."""
        self.assertEqual(default_line(preset("theta-zeta").fe), 1.25)
        self.assertEqual(default_line(preset("ramanujan-tau").fe), 6.75)

    def test_theta_P(self):
        """Test P(x) = sqrt(pi)/x - 1 for zeta(s) Gamma(s/2)."""
        fe = preset("theta-zeta").fe
        self.assertAlmostEqual(residual_P(fe, 1.0).real, 0.77245385, places=8)
        self.assertAlmostEqual(residual_P(fe, 2.5).real, math.sqrt(math.pi) / 2.5 - 1.0, places=11)

    def test_r2_P(self):
        """Test P(x) = pi/x - 1 for r2."""
        fe = preset("r2").fe
        self.assertAlmostEqual(residual_P(fe, 2.0).real, math.pi / 2.0 - 1.0, places=10)

    def test_theta_Q1(self):
        """Test Q_1(x) = x^2/2 - x/2, the main term of sum_{n <= x} (x - n)."""
        terms, value = residual_Q_rho(preset("theta-zeta").fe, 3.0, 1.0)
        self.assertAlmostEqual(value.real, 3.0, places=10)
        self.assertEqual(len(terms.poles), 2)

    def test_Q_rejects_negative_rho(self):
        """Test that rho < 0 is rejected."""
        with self.assertRaises(ValueError):
            residual_Q_rho(preset("theta-zeta").fe, 2.0, -0.5)

    def test_theta_P1_has_log_term(self):
        """Test that the double pole at 0 of P_1 produces a log x term."""
        fe = preset("theta-zeta").fe
        terms = residual_terms(fe, ResidualKind.P1, 1.25)
        self.assertTrue(any(term.logpower == 1 for term in terms.terms))
        x = 1.7
        self.assertAlmostEqual(residual_P1(fe, x), terms.evaluate(x), places=14)

    def test_no_poles(self):
        """Test that tau has no residual terms for P on its default line."""
        fe = preset("ramanujan-tau").fe
        self.assertEqual(residual_P(fe, 3.0), 0j)


class TestResidualTermSum(unittest.TestCase):
    """Test cases for ResidualTermSum arithmetic."""

    def setUp(self):
        self.terms = ResidualTermSum((ResidualTerm(0j, 0, -1.0), ResidualTerm(-1.0 + 0j, 0, 2.0)))

    def test_ordering(self):
        """Test that terms are sorted by decreasing real exponent."""
        self.assertEqual([t.exponent for t in self.terms.terms], [0j, -1.0 + 0j])

    def test_evaluate(self):
        """Test scalar and array evaluation."""
        self.assertAlmostEqual(self.terms.evaluate(2.0), 0j, places=14)
        self.assertEqual(self.terms.evaluate([1.0, 4.0]).shape, (2,))
        with self.assertRaises(ValueError):
            self.terms.evaluate(0.0)

    def test_derivative(self):
        """Test d/dx (2/x - 1) = -2/x^2."""
        self.assertAlmostEqual(self.terms.derivative().evaluate(2.0).real, -0.5, places=14)

    def test_derivative_of_log_term(self):
        """Test d/dx (x log x) = log x + 1."""
        terms = ResidualTermSum((ResidualTerm(1.0 + 0j, 1, 1.0),))
        self.assertAlmostEqual(terms.derivative().evaluate(3.0).real, math.log(3.0) + 1.0, places=13)

    def test_mellin_head(self):
        """Test int_0^1 (2/x - 1) x^(s-1) dx = 2/(s-1) - 1/s at s = 3."""
        self.assertAlmostEqual(self.terms.mellin_head(3.0).real, 1.0 - 1.0 / 3.0, places=14)
        with self.assertRaises(ResidueError):
            self.terms.mellin_head(1.0)


if __name__ == "__main__":
    unittest.main()
