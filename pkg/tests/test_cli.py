"""
test_cli.py
###########

Integration tests for the vlab command line: argument handling, exit codes and emitted output.
"""

import json
import math
import os
import shutil
import tempfile
import unittest
from io import StringIO
from unittest.mock import patch

from vlab.run import main


def _run(argv):
    """Runs the CLI and returns (exit code, stdout, stderr)."""
    with patch("sys.stdout", new_callable=StringIO) as out, patch("sys.stderr", new_callable=StringIO) as err:
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestCLI(unittest.TestCase):
    """Integration test cases for vlab commands."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_no_command(self):
        """Test that running without a command prints help and fails."""
        code, out, _ = _run([])
        self.assertEqual(code, 1)
        self.assertIn("vlab", out)

    def test_catalog_list(self):
        """Test that the catalog lists every preset."""
        code, out, _ = _run(["catalog", "list"])
        self.assertEqual(code, 0)
        self.assertIn("theta-zeta", out)
        self.assertIn("ramanujan-tau", out)

    def test_catalog_show(self):
        """Test showing a known and an unknown preset."""
        code, out, _ = _run(["catalog", "show", "r2"])
        self.assertEqual(code, 0)
        self.assertIn("delta", out)
        code, _, err = _run(["catalog", "show", "bogus"])
        self.assertEqual(code, 1)
        self.assertIn("bogus", err)

    def test_kernel_json(self):
        """Test the Z kernel of Gamma(s) at x = 2 emitted as JSON."""
        code, out, _ = _run(["kernel", "--kind", "Z", "--alphas", "1", "--betas", "0", "--x", "2.0", "--out", "json"])
        self.assertEqual(code, 0)
        row = json.loads(out)["rows"][0]
        self.assertAlmostEqual(row["value_re"], math.exp(-2.0), places=10)

    def test_kernel_needs_block(self):
        """Test that a kernel call without alphas or preset fails."""
        code, _, _ = _run(["kernel", "--x", "1.0"])
        self.assertEqual(code, 1)

    def test_kernel_rejects_non_positive_x(self):
        """Test that x <= 0 fails before any evaluation."""
        code, _, _ = _run(["kernel", "--alphas", "1", "--x", "-1.0"])
        self.assertEqual(code, 1)

    def test_identity_modular(self):
        """Test a passing modular check with JSON output."""
        code, out, _ = _run(["identity", "modular", "--preset", "theta-zeta", "--x", "1.0", "--out", "json"])
        self.assertEqual(code, 0)
        self.assertIn('"identity": "modular"', out)

    def test_identity_unknown_preset(self):
        """Test that an unknown preset fails with exit status 1."""
        code, _, _ = _run(["identity", "modular", "--preset", "zeta-cubed", "--x", "1.0"])
        self.assertEqual(code, 1)

    def test_identity_output_file(self):
        """Test writing CSV reports to a file."""
        path = os.path.join(self.temp_dir, "modular.csv")
        code, _, _ = _run(["identity", "modular", "--preset", "theta-zeta", "--x", "1.0", "--out", "csv",
                           "--output", path])
        self.assertEqual(code, 0)
        with open(path, "r", encoding="utf-8") as f:
            self.assertTrue(f.readline().startswith("identity,x_or_s"))

    def test_run_missing_config(self):
        """Test that a missing configuration file fails."""
        code, _, _ = _run(["run", "--config", os.path.join(self.temp_dir, "missing.json")])
        self.assertEqual(code, 1)

    def test_run_config(self):
        """Test running a configuration file."""
        path = os.path.join(self.temp_dir, "run.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"preset": "theta-zeta", "identity": "modular", "points": [0.6, 1.0]}, f)
        code, out, _ = _run(["run", "--config", path, "--out", "json"])
        self.assertEqual(code, 0)
        self.assertEqual(out.count('"identity": "modular"'), 2)


if __name__ == "__main__":
    unittest.main()
