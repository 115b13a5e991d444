"""
output.py
#########

CLI output formatting utilities. Provides consistent styling and messaging for CLI commands.
"""

import sys
from typing import Any, Dict, List, Sequence

from ...core.identities import IdentityReport


def print_success(message: str) -> None:
    """Print a success message."""
    print(f"[OK] {message}")


def print_error(message: str) -> None:
    """Print an error message to stderr."""
    print(f"[ERROR] {message}", file=sys.stderr)


def print_warning(message: str) -> None:
    """Print a warning message."""
    print(f"[WARN] {message}")


def print_info(message: str) -> None:
    """Print an informational message."""
    print(f"[INFO] {message}")


def print_header(message: str) -> None:
    """Print a section header."""
    print(f"\n{'=' * len(message)}")
    print(message)
    print("=" * len(message))


def _is_numeric(cell: str) -> bool:
    try:
        complex(cell.replace(" ", "").replace("i", "j"))
    except ValueError:
        return False
    return True


def print_table(headers: List[str], rows: List[List[str]], max_width: int = 100) -> None:
    """
    Print a formatted table. Numeric cells are right-aligned.

    Args:
        headers: Column headers
        rows: Table data rows
        max_width: Maximum table width; the widest column is trimmed first
    """
    if not rows:
        print("No data to display")
        return

    cells = [[str(cell) for cell in row] for row in rows]
    widths = [max([len(header)] + [len(row[i]) for row in cells]) for i, header in enumerate(headers)]
    frame = 3 * len(headers) + 1
    while sum(widths) + frame > max_width and max(widths) > 8:
        widths[widths.index(max(widths))] -= 1

    def line(values: List[str], numeric: List[bool]) -> str:
        parts = []
        for value, width, right in zip(values, widths, numeric):
            text = value[:width]
            parts.append(text.rjust(width) if right else text.ljust(width))
        return "| " + " | ".join(parts) + " |"

    print(line(headers, [False] * len(headers)))
    print("|" + "|".join("-" * (width + 2) for width in widths) + "|")
    for row in cells:
        print(line(row, [_is_numeric(cell) for cell in row]))


def format_number(value: Any, digits: int = 12) -> str:
    """
    Format a real or complex number compactly.

    Args:
        value: Number to format
        digits: Significant digits

    Returns:
        str: "1.5" for reals and "1.5+0.25j" when the imaginary part is non-zero
    """
    value = complex(value)
    if value.imag == 0.0:
        return f"{value.real:.{digits}g}"
    return f"{value.real:.{digits}g}{value.imag:+.{digits}g}j"


def format_point(point: Dict[str, Any]) -> str:
    """Format an evaluation point such as {'x': 1.0, 'rho': 2.0} as 'x=1, rho=2'."""
    return ", ".join(f"{key}={format_number(value, 8)}" for key, value in point.items())


def print_report_table(reports: Sequence[IdentityReport]) -> None:
    """
    Print one table row per identity report.

    Args:
        reports: Reports to display
    """
    headers = ["Identity", "Point", "LHS", "RHS", "Residual", "Estimate", "Status"]
    rows = []
    for report in reports:
        rows.append(
            [
                report.identity.value,
                format_point(report.point),
                format_number(report.lhs),
                format_number(report.rhs),
                f"{report.residual:.3e}",
                f"{report.truncation_estimate:.3e}",
                "PASS" if report.passed else "FAIL",
            ]
        )
    print_table(headers, rows, max_width=140)


def print_preset_summary(summary: Dict[str, Any]) -> None:
    """
    Print a formatted summary of a catalog preset.

    Args:
        summary: Preset data dictionary from RunManager.describe_preset
    """
    print_header(f"Preset {summary['name']}")
    print(f"delta: {format_number(summary['delta'])}")
    print(f"Q: {format_number(summary['bigQ'])}")
    print(f"omega: {format_number(summary['omega'])}")
    print(f"alphas: {', '.join(format_number(a) for a in summary['alphas'])}")
    print(f"betas: {', '.join(format_number(b) for b in summary['betas'])}")
    print(f"sigma_a: {summary['sigma_a']:g}, sigma_b: {summary['sigma_b']:g}")
    print(f"Lattice: {summary['lattice']}")

    if summary.get("description"):
        print(f"\nDescription:\n{summary['description']}")

    if summary.get("poles"):
        print("\nDeclared poles:")
        for pole in summary["poles"]:
            print(f"  s = {format_number(pole['location'])} (order {pole['order']})")

    if summary.get("zeros"):
        print("\nDeclared zero ladders:")
        for ladder in summary["zeros"]:
            print(f"  {format_number(ladder['start'])} + {format_number(ladder['step'])}k (order {ladder['order']})")

    if summary.get("oracles"):
        print(f"\nOracles: {', '.join(summary['oracles'])}")

    if summary.get("riesz_point"):
        point = summary["riesz_point"]
        mode = "relative" if point["relative"] else "absolute"
        print(f"Riesz test point: rho={point['rho']:g}, x={point['x']:g}, tol={point['tol']:g} ({mode})")
