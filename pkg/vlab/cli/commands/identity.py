"""
identity.py
###########

CLI command handler for identity checks (modular, aux, riesz, perron, fe, reconstruct).
Delegates to RunManager.
"""

import argparse
from argparse import Namespace
from typing import Any, Dict, List, Optional

from ...core.config import RunConfig
from ..utils.output import print_error, print_info
from ..utils.validation import validate_positive, validate_preset_name
from .run import execute_config

X_IDENTITIES = ("modular", "aux", "riesz", "perron")
S_IDENTITIES = ("fe", "reconstruct")


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds --out and --output to a computing command."""
    parser.add_argument("--out", choices=["json", "csv"], help="Emit machine-readable output instead of a table")
    parser.add_argument("--output", metavar="PATH", help="Write the output to PATH")


def add_preset_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    """Adds --preset and --param to a command that works on a catalog series."""
    parser.add_argument("--preset", required=required, help="Catalog preset name (see 'vlab catalog list')")
    parser.add_argument(
        "--param", action="append", default=[], metavar="KEY=VALUE",
        help="Preset parameter, e.g. --param k=3 for sigma-k (repeatable)",
    )


def setup_identity_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:  # type: ignore[type-arg]
    """Set up the identity command parser."""
    identity_parser = subparsers.add_parser("identity", help="Check an identity on a catalog series")
    identity_subparsers = identity_parser.add_subparsers(
        dest="identity_command", help="Identity to check", metavar="<identity>"
    )

    helps = {
        "modular": "Modular relation with Z kernels",
        "aux": "Auxiliary modular relation with Y and X kernels",
        "riesz": "Riesz sum against its kernel expansion",
        "perron": "Riesz sum against Perron's integral",
        "fe": "Functional equation from two independent reconstructions",
        "reconstruct": "Reconstructed completed function against direct evaluation",
    }
    for name, text in helps.items():
        sub = identity_subparsers.add_parser(name, help=text)
        add_preset_arguments(sub)
        if name in X_IDENTITIES:
            sub.add_argument("--x", type=float, nargs="+", required=True, help="Evaluation points x > 0")
        else:
            sub.add_argument(
                "--s", type=float, nargs=2, action="append", required=True, metavar=("RE", "IM"),
                help="Evaluation point s (repeatable)",
            )
        if name in ("riesz", "perron"):
            sub.add_argument("--rho", type=float, help="Riesz order (default: the preset's test point, else 1)")
        if name in ("aux", "riesz", "perron"):
            sub.add_argument("--a", type=float, help="Contour abscissa (default: chosen from the series)")
        if name == "riesz":
            sub.add_argument("--n-terms", type=int, help="Fixed number of conjugate-side terms")
        sub.add_argument("--tol", type=float, help="Tolerance (default depends on the identity)")
        mode = sub.add_mutually_exclusive_group()
        mode.add_argument("--relative", dest="relative", action="store_true", default=None,
                          help="Compare the residual with tol times max(|lhs|, |rhs|)")
        mode.add_argument("--absolute", dest="relative", action="store_false", default=None,
                          help="Compare the residual with tol")
        add_output_arguments(sub)

    return identity_parser  # type: ignore[no-any-return]


def parse_params(pairs: List[str]) -> Dict[str, float]:
    """
    Parse KEY=VALUE preset parameters.

    Raises:
        ValueError: If an entry is malformed.
    """
    params: Dict[str, float] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"Preset parameters look like KEY=VALUE, got {pair!r}")
        params[key.strip()] = float(value)
    return params


def build_identity_config(args: Namespace) -> RunConfig:
    """
    Builds the run configuration of a 'vlab identity <identity>' invocation.

    Args:
        args: Parsed command-line arguments

    Returns:
        RunConfig: The identity run
    """
    command = args.identity_command
    if command in S_IDENTITIES:
        points: List[Any] = [[re, im] for re, im in args.s]
    else:
        points = list(args.x)

    raw: Dict[str, Any] = {
        "identity": command,
        "preset": args.preset,
        "preset_params": parse_params(args.param),
        "points": points,
        "tol": args.tol,
        "relative": args.relative,
        "output": {"format": args.out or "json", "path": args.output},
    }
    for key in ("rho", "a", "n_terms"):
        value: Optional[Any] = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    return RunConfig.model_validate(raw)


def handle_identity(args: Namespace) -> int:
    """
    Handles the 'vlab identity' command by delegating to RunManager.

    Args:
        args: Parsed command-line arguments

    Returns:
        int: Exit code (0 if the identity held, 2 if it failed, 1 on error)
    """
    try:
        if not args.identity_command:
            print_error("No identity given.")
            print_info("Choose one of: " + ", ".join(X_IDENTITIES + S_IDENTITIES))
            return 1

        if not validate_preset_name(args.preset):
            print_error(f"Unknown preset: {args.preset}")
            print_info("Run 'vlab catalog list' to see the available presets.")
            return 1

        if args.identity_command in X_IDENTITIES:
            bad = [x for x in args.x if not validate_positive(x)]
            if bad:
                print_error(f"Evaluation points must be positive, got {bad}")
                return 1

        if args.tol is not None and not validate_positive(args.tol):
            print_error(f"Tolerance must be positive, got {args.tol}")
            return 1

        config = build_identity_config(args)
        return execute_config(config, emit=args.out is not None or args.output is not None)

    except KeyboardInterrupt:
        print_error("Operation cancelled by user.")
        return 130

    except Exception as e:
        print_error(f"Identity command failed: {e}")
        return 1
