"""
test_identities.py
##################

Unit tests for the modular relation, the auxiliary modular relation, the reconstruction of
the completed function and the identity report type.
"""

import json
import math
import unittest

import numpy as np
from scipy import special

from vlab.core.catalog import preset
from vlab.core.identities import (
    IdentityReport,
    IdentityTag,
    aux_modular_report,
    completed_function_direct,
    functional_equation_report,
    kernel_sum,
    modular_report,
    reconstruct_completed_function,
    reconstruction_report,
)
from vlab.core.kernels import KernelKind


def _theta_lhs(x: float) -> float:
    n = np.arange(1, 60, dtype=float)
    return float(2.0 * np.sum(np.exp(-(n * x) ** 2)))


class TestModularRelation(unittest.TestCase):
    """Test cases for the modular relation."""

    def setUp(self):
        self.theta = preset("theta-zeta").fe

    def test_theta_reference_value(self):
        """Test 2 sum exp(-n^2) = 0.77263720."""
        report = modular_report(self.theta, 1.0, 1e-9)
        self.assertAlmostEqual(report.lhs.real, 0.77263720, places=8)

    def test_theta_identity(self):
        """Test the theta transformation formula at several x."""
        for x in (0.6, 1.0, 1.7):
            with self.subTest(x=x):
                report = modular_report(self.theta, x, 1e-9)
                self.assertLess(report.residual, 1e-9)
                self.assertAlmostEqual(report.lhs.real, _theta_lhs(x), places=12)
                self.assertTrue(report.passed)
                self.assertIs(report.identity, IdentityTag.MODULAR)
                self.assertGreater(report.terms_used["lhs"], 0)

    def test_r2_kernel_sum(self):
        """Test sum r2(n) e^-n against a direct sum."""
        fe = preset("r2").fe
        result = kernel_sum(fe, KernelKind.of("Z"), 1.0, 1e-12)
        _, coeffs = fe.series.prefix(80)
        direct = float(np.sum(coeffs.real * np.exp(-np.arange(1, 81, dtype=float))))
        self.assertLess(abs(result.value - direct), 1e-11)
        self.assertLess(result.estimate, 1e-11)

    def test_rejects_non_positive_x(self):
        """Test that x <= 0 is rejected."""
        with self.assertRaises(ValueError):
            modular_report(self.theta, 0.0, 1e-8)


class TestAuxiliaryModularRelation(unittest.TestCase):
    """Test cases for the Y/X relation."""

    def test_theta(self):
        """Test the auxiliary relation for zeta(s) Gamma(s/2)."""
        report = aux_modular_report(preset("theta-zeta").fe, 1.0, 1e-7)
        self.assertTrue(report.passed, f"residual {report.residual:.3g}")
        self.assertEqual(report.point["a"], 1.25)

    def test_r2_bessel_side(self):
        """Test the r2 relation; its left side is sum r2(n) 2 K_0(2 sqrt(n x))."""
        fe = preset("r2").fe
        report = aux_modular_report(fe, 1.0, 1e-7)
        self.assertTrue(report.passed, f"residual {report.residual:.3g}")
        _, coeffs = fe.series.prefix(400)
        n = np.arange(1, 401, dtype=float)
        direct = float(np.sum(coeffs.real * 2.0 * special.k0(2.0 * np.sqrt(n))))
        self.assertLess(abs(report.lhs - direct), 3e-8)


class TestReconstruction(unittest.TestCase):
    """Test cases for rebuilding Q^s F(s) from kernel sums."""

    def setUp(self):
        self.theta = preset("theta-zeta").fe

    def test_direct_value(self):
        """Test the direct completed function pi^-s/2 Gamma(s/2) zeta(s) at s = 2."""
        self.assertAlmostEqual(completed_function_direct(self.theta, 2.0).real, math.pi / 6.0, places=12)

    def test_reconstruction_in_convergence_region(self):
        """Test the reconstruction against the direct value at s = 3."""
        rebuilt = reconstruct_completed_function(self.theta, 3.0)
        direct = completed_function_direct(self.theta, 3.0)
        self.assertLess(abs(rebuilt - direct), 1e-8 * abs(direct))

    def test_reconstruction_report(self):
        """Test the reconstruction report at s = 2.5 + i."""
        report = reconstruction_report(self.theta, 2.5 + 1.0j)
        self.assertTrue(report.passed, f"relative residual {report.relative_residual:.3g}")
        self.assertTrue(report.relative)
        self.assertIs(report.identity, IdentityTag.RECONSTRUCTION)
        self.assertEqual(report.to_dict()["identity"], "reconstruction")

    def test_functional_equation(self):
        """Test the functional equation inside and outside the critical strip."""
        for s in (3.0 + 0j, 0.8 + 2.0j):
            with self.subTest(s=s):
                report = functional_equation_report(self.theta, s)
                self.assertTrue(report.passed, f"relative residual {report.relative_residual:.3g}")
                self.assertIs(report.identity, IdentityTag.FUNCTIONAL_EQ)


class TestIdentityReport(unittest.TestCase):
    """Test cases for IdentityReport bookkeeping."""

    def setUp(self):
        self.report = IdentityReport(
            identity=IdentityTag.RIESZ,
            point={"x": 10.5, "rho": 2.0},
            lhs=5.0 + 1.0j,
            rhs=5.0 + 1.0005j,
            terms_used={"lhs": 10, "rhs": 200},
            truncation_estimate=1e-9,
            tol=1e-4,
        )

    def test_absolute_and_relative(self):
        """Test the absolute and relative pass criteria."""
        self.assertFalse(self.report.passed)
        self.assertTrue(self.report.canary)
        relative = IdentityReport(IdentityTag.RIESZ, {"x": 10.5}, 5.0 + 1.0j, 5.0 + 1.0005j, tol=1e-4, relative=True)
        self.assertTrue(relative.passed)
        self.assertFalse(relative.canary)

    def test_dict_round_trip(self):
        """Test that a report survives JSON serialisation."""
        text = json.dumps(self.report.to_dict())
        restored = IdentityReport.from_dict(json.loads(text))
        self.assertEqual(restored, self.report)

    def test_complex_point(self):
        """Test that complex points are encoded as re/im pairs."""
        report = IdentityReport(IdentityTag.FUNCTIONAL_EQ, {"s": 0.8 + 2.0j}, 1.0, 1.0)
        data = report.to_dict()
        self.assertEqual(data["point"]["s"], {"re": 0.8, "im": 2.0})
        self.assertEqual(IdentityReport.from_dict(data).point["s"], 0.8 + 2.0j)
        self.assertTrue(data["passed"])


if __name__ == "__main__":
    unittest.main()
