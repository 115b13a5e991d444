"""
test_report_manager.py
######################

Unit tests for ReportManager: exit status, summaries and JSON/CSV output.
"""

import csv
import io
import json
import os
import shutil
import tempfile
import unittest

from vlab.core.identities import IdentityReport, IdentityTag
from vlab.managers.ReportManager import CSV_COLUMNS, ReportManager


def _report(residual: float, identity: IdentityTag = IdentityTag.MODULAR) -> IdentityReport:
    return IdentityReport(
        identity=identity,
        point={"x": 1.5},
        lhs=2.0 + 0j,
        rhs=complex(2.0 + residual),
        terms_used={"lhs": 12, "rhs": 30},
        truncation_estimate=1e-12,
        tol=1e-6,
    )


class TestReportManager(unittest.TestCase):
    """Test cases for ReportManager."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_unknown_format(self):
        """Test that an unknown output format raises ValueError."""
        with self.assertRaises(ValueError):
            ReportManager("xml")

    def test_exit_codes(self):
        """Test exit status 0 when every identity holds and 2 otherwise."""
        reports = ReportManager()
        self.assertEqual(reports.exit_code(), 0)
        reports.add_report(_report(1e-9))
        self.assertEqual(reports.exit_code(), 0)
        reports.add_report(_report(1e-3))
        self.assertEqual(reports.exit_code(), 2)

    def test_summary(self):
        """Test the pass/fail counts."""
        reports = ReportManager()
        reports.add_report(_report(1e-9))
        reports.add_report(_report(1e-3))
        reports.add_row({"x": 1.0, "value_re": 0.5})
        self.assertEqual(reports.summary(), {"reports": 2, "passed": 1, "failed": 1, "rows": 1})

    def test_json_round_trip(self):
        """Test that reports written as JSON load back unchanged."""
        reports = ReportManager("json")
        originals = [_report(1e-9), _report(1e-3, IdentityTag.AUX_MODULAR)]
        for report in originals:
            reports.add_report(report)
        text = reports.render()
        self.assertNotIn("rows", json.loads(text))
        self.assertEqual(ReportManager.load_reports(text), originals)

    def test_json_rows_encode_complex(self):
        """Test that complex values in rows become re/im pairs."""
        reports = ReportManager("json")
        reports.add_row({"x": 2.0, "amplitude": 1.0 + 2.0j})
        document = json.loads(reports.render())
        self.assertEqual(document["rows"][0]["amplitude"], {"re": 1.0, "im": 2.0})
        self.assertNotIn("reports", document)

    def test_csv_columns(self):
        """Test the CSV header and one report line."""
        reports = ReportManager("csv")
        reports.add_report(_report(1e-9))
        lines = list(csv.reader(io.StringIO(reports.render())))
        self.assertEqual(lines[0], CSV_COLUMNS)
        self.assertEqual(len(lines), 2)
        row = dict(zip(CSV_COLUMNS, lines[1]))
        self.assertEqual(row["identity"], IdentityTag.MODULAR.value)
        self.assertEqual(row["x_or_s"], "1.5")
        self.assertEqual(row["rho"], "")
        self.assertEqual(row["terms_rhs"], "30")
        self.assertEqual(row["passed"], "True")

    def test_csv_reports_and_rows(self):
        """Test that a report block and a row block are separated by a blank line."""
        reports = ReportManager("csv")
        reports.add_report(_report(1e-9))
        reports.add_row({"x": 2.0, "value_re": 0.25})
        blocks = reports.render().split("\n\n")
        self.assertEqual(len(blocks), 2)
        self.assertTrue(blocks[1].startswith("x,value_re"))

    def test_write_without_path(self):
        """Test that write() hands back the text when no path is set."""
        reports = ReportManager("json")
        reports.add_report(_report(1e-9))
        self.assertEqual(reports.write(), reports.render())

    def test_write_to_file(self):
        """Test that write() creates missing directories and the file."""
        path = os.path.join(self.temp_dir, "out", "reports.json")
        reports = ReportManager("json", path)
        reports.add_report(_report(1e-9))
        self.assertIsNone(reports.write())
        with open(path, "r", encoding="utf-8") as f:
            self.assertEqual(len(ReportManager.load_reports(f.read())), 1)


if __name__ == "__main__":
    unittest.main()
