"""
run.py
######

CLI command handler for configuration-driven runs, plus the shared execute/emit path every
computing command goes through. Delegates to RunManager and ReportManager.
"""

from argparse import Namespace
from typing import Any, Dict, List, Optional

from ...core.config import RunConfig, load_run_config
from ...managers.ReportManager import ReportManager
from ...managers.RunManager import RunManager
from ..utils.output import (
    format_number,
    print_error,
    print_info,
    print_report_table,
    print_success,
    print_table,
    print_warning,
)
from ..utils.validation import validate_output_path


def handle_run(args: Namespace) -> int:
    """
    Handles the 'vlab run' command by loading a JSON run configuration and delegating to RunManager.

    Args:
        args: Parsed command-line arguments

    Returns:
        int: Exit code (0 if every identity held, 2 on identity failure, 1 on error)
    """
    try:
        config = load_run_config(args.config)
        overrides: Dict[str, Any] = {}
        if args.out is not None:
            overrides["format"] = args.out
        if args.output is not None:
            overrides["path"] = args.output
        if overrides:
            config = config.model_copy(update={"output": config.output.model_copy(update=overrides)})
        return execute_config(config, emit=True)

    except KeyboardInterrupt:
        print_error("Operation cancelled by user.")
        return 130

    except FileNotFoundError as e:
        print_error(str(e))
        return 1

    except Exception as e:
        print_error(f"Run failed: {e}")
        return 1


def execute_config(config: RunConfig, emit: bool) -> int:
    """
    Runs a configuration and shows or writes its results.

    Args:
        config: Validated run configuration
        emit: Serialise as JSON/CSV instead of printing tables

    Returns:
        int: ReportManager exit code

    Raises:
        PermissionError: If the output location is not writable.
    """
    if not validate_output_path(config.output.path):
        raise PermissionError(f"Cannot write output to {config.output.path}")

    manager = RunManager(config)
    reports = manager.run()

    if emit or config.output.path is not None:
        text = reports.write()
        if text is not None:
            print(text)
        else:
            print_success(f"Wrote {config.output.format.upper()} output to {config.output.path}")
    else:
        show_results(reports)

    return finish(reports)


def show_results(reports: ReportManager) -> None:
    """Print identity reports and value rows as tables."""
    if reports.reports:
        print_report_table(reports.reports)
    if reports.rows:
        headers = list(reports.rows[0])
        rows: List[List[str]] = [[_cell(row[key]) for key in headers] for row in reports.rows]
        print_table(headers, rows, max_width=160)


def finish(reports: ReportManager) -> int:
    """Report the pass/fail summary and return the exit code."""
    summary = reports.summary()
    if summary["reports"]:
        if reports.all_passed:
            print_info(f"All {summary['reports']} identity check(s) passed")
        else:
            print_warning(f"{summary['failed']} of {summary['reports']} identity check(s) failed")
    return reports.exit_code()


def _cell(value: Optional[Any]) -> str:
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, (float, complex)):
        return format_number(value)
    return str(value)
