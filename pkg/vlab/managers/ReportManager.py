"""
ReportManager.py
################

This module provides the ReportManager class, which collects the identity reports and value tables
produced by a run, decides the run's exit status and serialises everything as JSON or CSV.
"""

# Imports
import csv
import io
import json
import logging
import os
from typing import Any, Dict, List, Optional

from ..core.identities import IdentityReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "identity",
    "x_or_s",
    "rho",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "residual",
    "terms_lhs",
    "terms_rhs",
    "trunc_est",
    "passed",
]


def _point_text(value: Any) -> str:
    value = complex(value)
    if value.imag == 0.0:
        return repr(value.real)
    return f"{value.real!r}{value.imag:+}j"


class ReportManager:
    """
    ReportManager holds the results of one run.

    A run produces either:
    - Identity reports: one IdentityReport per evaluation point
    - Value tables: one row per point for kernel and asymptotic computations

    Identity failures give exit status 2; a run with no failures gives 0.
    """

    def __init__(self, output_format: str = "json", output_path: Optional[str] = None):
        """
        Initialize an empty report collection.

        Args:
            output_format (str): "json" or "csv".
            output_path (Optional[str]): File to write; None writes to stdout.

        Raises:
            ValueError: If the format is unknown.
        """
        if output_format not in ("json", "csv"):
            raise ValueError(f"Unknown output format: {output_format}. Expected json or csv")
        self.output_format = output_format
        self.output_path = output_path
        self.reports: List[IdentityReport] = []
        self.rows: List[Dict[str, Any]] = []

    def add_report(self, report: IdentityReport) -> None:
        """Adds an identity report and logs its outcome."""
        self.reports.append(report)
        if report.canary:
            logger.warning(
                "%s at %s misses tol %.3g with a confident truncation estimate %.3g",
                report.identity.value, report.point, report.tol, report.truncation_estimate,
            )
        logger.debug("%s at %s: residual %.3g", report.identity.value, report.point, report.residual)

    def add_row(self, row: Dict[str, Any]) -> None:
        """Adds one row of a kernel or asymptotic value table."""
        self.rows.append(dict(row))

    @property
    def all_passed(self) -> bool:
        return all(report.passed for report in self.reports)

    def exit_code(self) -> int:
        """0 if every identity held within its tolerance, 2 otherwise."""
        return 0 if self.all_passed else 2

    def summary(self) -> Dict[str, int]:
        passed = sum(1 for report in self.reports if report.passed)
        return {"reports": len(self.reports), "passed": passed, "failed": len(self.reports) - passed, "rows": len(self.rows)}

    # Serialisation

    def to_json(self) -> str:
        document: Dict[str, Any] = {}
        if self.reports:
            document["reports"] = [report.to_dict() for report in self.reports]
        if self.rows:
            document["rows"] = [{key: _json_value(value) for key, value in row.items()} for row in self.rows]
        return json.dumps(document, indent=2)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        if self.reports:
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for report in self.reports:
                writer.writerow(self._csv_row(report))
        if self.rows:
            if self.reports:
                buffer.write("\n")
            headers = list(self.rows[0])
            dict_writer = csv.DictWriter(buffer, fieldnames=headers, lineterminator="\n")
            dict_writer.writeheader()
            for row in self.rows:
                dict_writer.writerow({key: _csv_value(value) for key, value in row.items()})
        return buffer.getvalue()

    @staticmethod
    def _csv_row(report: IdentityReport) -> List[Any]:
        point = report.point.get("x", report.point.get("s"))
        rho = report.point.get("rho")
        return [
            report.identity.value,
            "" if point is None else _point_text(point),
            "" if rho is None else repr(float(rho)),
            repr(float(report.lhs.real)),
            repr(float(report.lhs.imag)),
            repr(float(report.rhs.real)),
            repr(float(report.rhs.imag)),
            repr(float(report.residual)),
            report.terms_used.get("lhs", ""),
            report.terms_used.get("rhs", ""),
            repr(float(report.truncation_estimate)),
            bool(report.passed),
        ]

    def render(self) -> str:
        return self.to_json() if self.output_format == "json" else self.to_csv()

    def write(self) -> Optional[str]:
        """
        Writes the rendered output to output_path.

        Returns:
            Optional[str]: The rendered text when no path is set, for the caller to print.

        Raises:
            PermissionError: If the output file cannot be written.
        """
        text = self.render()
        if self.output_path is None:
            return text
        directory = os.path.dirname(os.path.abspath(self.output_path))
        os.makedirs(directory, exist_ok=True)
        with open(self.output_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.debug("wrote %d reports and %d rows to %s", len(self.reports), len(self.rows), self.output_path)
        return None

    @staticmethod
    def load_reports(text: str) -> List[IdentityReport]:
        """Parses the reports of a JSON document written by to_json."""
        document = json.loads(text)
        return [IdentityReport.from_dict(item) for item in document.get("reports", [])]


def _json_value(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def _csv_value(value: Any) -> Any:
    if isinstance(value, complex):
        return _point_text(value)
    if isinstance(value, float):
        return repr(value)
    return value
