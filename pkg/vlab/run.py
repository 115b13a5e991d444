"""
run.py
######

Main CLI entry point for vlab. This file handles argument parsing and delegates
to appropriate command implementations. No numerical logic should be implemented here.
"""

import sys
import logging
import argparse
from typing import List, Optional


def create_parser() -> argparse.ArgumentParser:
    """
    Creates and configures the main argument parser for the vlab CLI.

    Returns:
        argparse.ArgumentParser: Configured argument parser.
    """
    parser = argparse.ArgumentParser(
        prog="vlab",
        description="A numerical laboratory for Dirichlet series with Hecke-type functional equations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  vlab kernel --kind Z --alphas 1 --betas 0 --x 2.0          Evaluate a kernel
  vlab identity modular --preset theta-zeta --x 1.0 --tol 1e-9 --out json
  vlab identity riesz --preset divisor --rho 2 --x 10.5        Check a Riesz identity
  vlab identity fe --preset theta-zeta --s 0.8 2.0             Check the functional equation
  vlab asympt --preset r2 --rho 1 --x 50 100 200               Compare the expansion with quadrature
  vlab catalog list                                            List the presets
  vlab run --config templates/template_run.json                Run a configuration file
        """,
    )

    parser.add_argument("--version", action="version", version="%(prog)s 0.1.0")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log numerical decisions at DEBUG level")

    # Create subparsers for commands
    subparsers = parser.add_subparsers(dest="command", help="Available commands", metavar="<command>")

    # Kernel command
    kernel_parser = subparsers.add_parser("kernel", help="Evaluate a Z, Y or X kernel")
    kernel_parser.add_argument("--kind", choices=["Z", "Y", "X"], default="Z", help="Kernel family (default: Z)")
    kernel_parser.add_argument("--alphas", nargs="+", help="Gamma factor scales alpha_i (comma or space separated)")
    kernel_parser.add_argument("--betas", nargs="+", help="Gamma factor shifts beta_i, complex as 0.3+0.2i")
    kernel_parser.add_argument("--delta", type=float, help="delta of the X kernel")
    kernel_parser.add_argument("--preset", help="Take the Gamma block (and delta) from a catalog preset")
    kernel_parser.add_argument("--x", type=float, nargs="+", required=True, help="Arguments x > 0")
    kernel_parser.add_argument("--a", type=float, help="Contour abscissa")
    kernel_parser.add_argument("--tol", type=float, help="Absolute accuracy target")
    kernel_parser.add_argument("--t-max", type=float, help="Override the truncation height")
    kernel_parser.add_argument("--panels", type=int, help="Override the number of quadrature panels")
    kernel_parser.add_argument("--out", choices=["json", "csv"], help="Emit machine-readable output instead of a table")
    kernel_parser.add_argument("--output", metavar="PATH", help="Write the output to PATH")

    # Identity and asympt commands
    from .cli.commands.identity import setup_identity_parser
    from .cli.commands.asympt import setup_asympt_parser

    setup_identity_parser(subparsers)
    setup_asympt_parser(subparsers)

    # Catalog commands
    catalog_parser = subparsers.add_parser("catalog", help="Browse the preset catalog")
    catalog_subparsers = catalog_parser.add_subparsers(
        dest="catalog_command", help="Catalog operations", metavar="<operation>"
    )
    catalog_subparsers.add_parser("list", help="List presets")
    show_parser = catalog_subparsers.add_parser("show", help="Show a preset's functional-equation data")
    show_parser.add_argument("name", help="Preset name")
    show_parser.add_argument("--param", action="append", default=[], metavar="KEY=VALUE", help="Preset parameter")

    # Run command
    run_parser = subparsers.add_parser("run", help="Run a JSON configuration file")
    run_parser.add_argument("--config", required=True, metavar="PATH", help="Run configuration (JSON)")
    run_parser.add_argument("--out", choices=["json", "csv"], help="Override the configured output format")
    run_parser.add_argument("--output", metavar="PATH", help="Override the configured output path")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main CLI entry point function. This is called by the installed 'vlab' command.

    Args:
        argv: Optional argument list (defaults to sys.argv[1:])

    Returns:
        int: Exit code (0 for success, 2 for a failed identity, 1 for errors)
    """
    if argv is None:
        argv = sys.argv[1:]

    parser = create_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s")
    else:
        logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")

    # Handle case where no command is provided
    if not args.command:
        parser.print_help()
        return 1

    try:
        # Lazy dispatch to the command handlers

        if args.command == "kernel":
            from .cli.commands.kernel import handle_kernel

            return handle_kernel(args)

        elif args.command == "identity":
            from .cli.commands.identity import handle_identity

            return handle_identity(args)

        elif args.command == "asympt":
            from .cli.commands.asympt import handle_asympt

            return handle_asympt(args)

        elif args.command == "catalog":
            from .cli.commands.catalog import handle_catalog

            return handle_catalog(args)

        elif args.command == "run":
            from .cli.commands.run import handle_run

            return handle_run(args)

        else:
            print(f"Unknown command: {args.command}", file=sys.stderr)
            parser.print_help()
            return 1

    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return 130

    except ImportError as e:
        print(f"ImportError: {e}. Please ensure all required dependencies are installed.", file=sys.stderr)
        return 1

    except PermissionError as e:
        print(f"PermissionError: {e}. Please check your file permissions.", file=sys.stderr)
        return 1

    except Exception as e:
        print(f"An unexpected error occurred: {e}. Please report this issue.", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
