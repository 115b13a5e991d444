"""
asympt.py
#########

CLI command handler for the large-argument expansion of the Riesz kernel integral.
Delegates to RunManager.
"""

import argparse
from argparse import Namespace
from typing import Any, Dict

from ...core.config import ASYMPTOTIC_THRESHOLD, RunConfig
from ...managers.RunManager import RunManager
from ..utils.output import format_number, print_error, print_header, print_info, print_table
from ..utils.validation import validate_preset_name
from .identity import add_output_arguments, add_preset_arguments, parse_params
from .run import execute_config


def setup_asympt_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:  # type: ignore[type-arg]
    """Set up the asympt command parser."""
    parser = subparsers.add_parser("asympt", help="Compare the oscillatory expansion with quadrature")
    add_preset_arguments(parser)
    parser.add_argument("--rho", type=float, default=1.0, help="Riesz order (default: 1)")
    parser.add_argument("--x", type=float, nargs="+", help=f"Evaluation points x >= {ASYMPTOTIC_THRESHOLD:g}")
    parser.add_argument("--m", type=int, default=0, help="Highest term index of the expansion (default: 0)")
    parser.add_argument("--a", type=float, help="Contour abscissa (default: chosen from the series)")
    parser.add_argument("--table", action="store_true", help="Print the coefficient table A_0..A_m")
    add_output_arguments(parser)
    return parser  # type: ignore[no-any-return]


def build_asympt_config(args: Namespace) -> RunConfig:
    raw: Dict[str, Any] = {
        "identity": "asympt",
        "preset": args.preset,
        "preset_params": parse_params(args.param),
        "points": list(args.x) if args.x else [ASYMPTOTIC_THRESHOLD],
        "rho": args.rho,
        "m": args.m,
        "a": args.a,
        "output": {"format": args.out or "json", "path": args.output},
    }
    return RunConfig.model_validate(raw)


def handle_asympt(args: Namespace) -> int:
    """
    Handles the 'vlab asympt' command by delegating to RunManager.

    Args:
        args: Parsed command-line arguments

    Returns:
        int: Exit code (0 for success, non-zero for error)
    """
    try:
        if not validate_preset_name(args.preset):
            print_error(f"Unknown preset: {args.preset}")
            print_info("Run 'vlab catalog list' to see the available presets.")
            return 1
        if not args.table and not args.x:
            print_error("Give evaluation points with --x or ask for the coefficient table with --table.")
            return 1
        if args.x and min(args.x) < ASYMPTOTIC_THRESHOLD:
            print_error(f"The expansion is only evaluated for x >= {ASYMPTOTIC_THRESHOLD:g}, got {min(args.x)}")
            return 1

        config = build_asympt_config(args)
        if args.table:
            show_coefficient_table(RunManager(config))
            if not args.x:
                return 0
        return execute_config(config, emit=args.out is not None or args.output is not None)

    except KeyboardInterrupt:
        print_error("Operation cancelled by user.")
        return 130

    except Exception as e:
        print_error(f"Asympt command failed: {e}")
        return 1


def show_coefficient_table(manager: RunManager) -> None:
    """Print A_n, the power of x and the phase of every term."""
    print_header(f"Expansion coefficients for {manager.series.name}, rho = {manager.rho:g}")
    rows = [
        [str(row["n"]), format_number(row["amplitude"]), format_number(row["exponent"]),
         format_number(row["phase"]), row["source"]]
        for row in manager.coefficient_table()
    ]
    print_table(["n", "A_n", "Power of x", "Phase", "Source"], rows, max_width=140)
