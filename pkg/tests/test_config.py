"""
test_config.py
##############

Unit tests for run configuration loading and environment overrides.
"""

import json
import os
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from vlab.core.config import RunConfig, get_node_budget, get_riesz_cap, load_run_config, parse_point
from vlab.core.errors import ConfigurationError


class TestRunConfigLoading(unittest.TestCase):
    """Test cases for load_run_config."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.root = Path(self.temp_dir)

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def _write(self, name: str, text: str) -> str:
        path = self.root / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_valid_config(self):
        """Test that a preset run configuration loads with its defaults."""
        path = self._write(
            "run.json",
            json.dumps({"preset": "theta-zeta", "identity": "modular", "points": [1.0, "0.5"]}),
        )
        config = load_run_config(path)
        self.assertEqual(config.preset, "theta-zeta")
        self.assertEqual(config.output.format, "json")
        self.assertIsNone(config.output.path)
        self.assertEqual(config.m, 0)

    def test_shipped_templates(self):
        """Test that the template run files validate."""
        templates = Path(__file__).resolve().parent.parent / "templates"
        preset_run = load_run_config(str(templates / "template_run.json"))
        self.assertEqual((preset_run.preset, preset_run.identity, preset_run.rho), ("divisor", "riesz", 2.0))
        custom_run = load_run_config(str(templates / "template_custom_run.json"))
        self.assertEqual(custom_run.custom.generator, "r2")
        self.assertEqual(custom_run.output.format, "csv")

    def test_missing_file(self):
        """Test that a missing file raises FileNotFoundError."""
        with self.assertRaises(FileNotFoundError):
            load_run_config(str(self.root / "missing.json"))

    def test_invalid_json(self):
        """Test that malformed JSON raises ConfigurationError."""
        path = self._write("broken.json", "{ not json")
        with self.assertRaises(ConfigurationError):
            load_run_config(path)

    def test_invalid_schema(self):
        """Test that an unknown identity raises ConfigurationError."""
        path = self._write("bad.json", json.dumps({"preset": "r2", "identity": "zeta", "points": [1.0]}))
        with self.assertRaises(ConfigurationError):
            load_run_config(path)


class TestRunConfigModel(unittest.TestCase):
    """Test cases for RunConfig validation."""

    def test_needs_exactly_one_series(self):
        """Test that preset and custom are mutually exclusive and one is required."""
        with self.assertRaises(ValueError):
            RunConfig(identity="modular", points=[1.0])

    def test_kernel_needs_no_series(self):
        """Test that a kernel run may omit the series."""
        config = RunConfig(identity="kernel", points=[2.0], kernel={"kind": "Z", "alphas": [1.0], "betas": [0.0]})
        self.assertIsNone(config.preset)

    def test_rejects_bad_points(self):
        """Test that unparsable and missing points are rejected."""
        with self.assertRaises(ValueError):
            RunConfig(preset="r2", identity="modular", points=["one"])
        with self.assertRaises(ValueError):
            RunConfig(preset="r2", identity="modular", points=[])

    def test_rejects_non_positive_tolerance(self):
        """Test that tol must be positive."""
        with self.assertRaises(ValueError):
            RunConfig(preset="r2", identity="modular", points=[1.0], tol=0.0)

    def test_parse_point(self):
        """Test the accepted point encodings."""
        self.assertEqual(parse_point("0.8+2j"), 0.8 + 2j)
        self.assertEqual(parse_point("0.8 + 2j"), 0.8 + 2j)
        self.assertEqual(parse_point([1.0, 2.0]), 1.0 + 2.0j)
        self.assertEqual(parse_point(3), 3 + 0j)


class TestEnvironmentOverrides(unittest.TestCase):
    """Test cases for the environment-driven numerical limits."""

    def test_defaults(self):
        """Test the default node budget and Riesz cap."""
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop("VLAB_NODE_BUDGET", None)
            os.environ.pop("VLAB_RIESZ_CAP", None)
            self.assertEqual(get_node_budget(), 400000)
            self.assertEqual(get_riesz_cap(), 2000)

    def test_overrides(self):
        """Test that environment values are read."""
        with patch.dict(os.environ, {"VLAB_NODE_BUDGET": "1000", "VLAB_RIESZ_CAP": "50"}):
            self.assertEqual(get_node_budget(), 1000)
            self.assertEqual(get_riesz_cap(), 50)

    def test_invalid_values(self):
        """Test that non-integer and non-positive values raise ConfigurationError."""
        with patch.dict(os.environ, {"VLAB_NODE_BUDGET": "lots"}):
            with self.assertRaises(ConfigurationError):
                get_node_budget()
        with patch.dict(os.environ, {"VLAB_RIESZ_CAP": "0"}):
            with self.assertRaises(ConfigurationError):
                get_riesz_cap()


if __name__ == "__main__":
    unittest.main()
