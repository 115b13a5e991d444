"""
catalog.py
##########

CLI command handler for browsing the preset catalog. Delegates to the catalog and RunManager.
"""

from argparse import Namespace

from ...core.catalog import PRESET_DATABASE
from ...managers.RunManager import RunManager
from ..utils.output import print_error, print_info, print_preset_summary, print_table
from ..utils.validation import validate_preset_name
from .identity import parse_params


def handle_catalog(args: Namespace) -> int:
    """
    Handles the 'vlab catalog' command.

    Args:
        args: Parsed command-line arguments

    Returns:
        int: Exit code (0 for success, non-zero for error)
    """
    try:
        if args.catalog_command == "list":
            return handle_catalog_list(args)
        elif args.catalog_command == "show":
            return handle_catalog_show(args)
        else:
            print_error(f"Unknown catalog command: {args.catalog_command}")
            return 1

    except KeyboardInterrupt:
        print_error("Operation cancelled by user.")
        return 130

    except Exception as e:
        print_error(f"Catalog command failed: {e}")
        return 1


def handle_catalog_list(args: Namespace) -> int:
    """
    Handle 'vlab catalog list' command.

    Args:
        args: Parsed command-line arguments

    Returns:
        int: Exit code (0 for success, non-zero for error)
    """
    rows = []
    for name, info in PRESET_DATABASE.items():
        params = ", ".join(f"{key}={value:g}" for key, value in info.parameters.items()) or "-"
        rows.append([name, params, info.summary])

    print_info(f"Found {len(rows)} preset(s)")
    print_table(["Name", "Parameters", "Summary"], rows, max_width=120)
    return 0


def handle_catalog_show(args: Namespace) -> int:
    """
    Handle 'vlab catalog show <name>' command.

    Args:
        args: Parsed command-line arguments

    Returns:
        int: Exit code (0 for success, non-zero for error)
    """
    if not validate_preset_name(args.name):
        print_error(f"Unknown preset: {args.name}")
        print_info("Run 'vlab catalog list' to see the available presets.")
        return 1

    try:
        summary = RunManager.describe_preset(args.name, **parse_params(args.param))
    except ValueError as e:
        print_error(f"Failed to build preset {args.name}: {e}")
        return 1

    print_preset_summary(summary)
    return 0
