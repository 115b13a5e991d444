"""
kernel.py
#########

CLI command handler for kernel evaluation. Delegates to RunManager.
"""

from argparse import Namespace
from typing import Any, Dict, List

from ...core.config import RunConfig
from ..utils.output import print_error, print_info
from ..utils.validation import parse_number_list, validate_positive, validate_preset_name
from .run import execute_config


def _literal(value: complex) -> Any:
    return value.real if value.imag == 0.0 else f"{value.real!r}{value.imag:+}j"


def build_kernel_config(args: Namespace) -> RunConfig:
    """
    Builds the run configuration of a 'vlab kernel' invocation.

    Args:
        args: Parsed command-line arguments

    Returns:
        RunConfig: A kernel run over the requested arguments
    """
    kernel: Dict[str, Any] = {"kind": args.kind}
    if args.alphas:
        alphas = parse_number_list(args.alphas)
        betas = parse_number_list(args.betas) if args.betas else [0j] * len(alphas)
        kernel["alphas"] = [_literal(a) for a in alphas]
        kernel["betas"] = [_literal(b) for b in betas]
    if args.delta is not None:
        kernel["delta"] = args.delta
    if args.a is not None:
        kernel["a"] = args.a

    raw: Dict[str, Any] = {
        "identity": "kernel",
        "preset": args.preset,
        "kernel": kernel,
        "points": list(args.x),
        "tol": args.tol,
        "output": {"format": args.out or "json", "path": args.output},
    }
    if args.t_max is not None or args.panels is not None:
        raw["contour"] = {"t_max": args.t_max, "panels": args.panels}
    return RunConfig.model_validate(raw)


def handle_kernel(args: Namespace) -> int:
    """
    Handles the 'vlab kernel' command by delegating to RunManager.

    Args:
        args: Parsed command-line arguments

    Returns:
        int: Exit code (0 for success, non-zero for error)
    """
    try:
        if not args.alphas and not args.preset:
            print_error("Give the Gamma block with --alphas/--betas or take it from --preset.")
            return 1
        if args.preset and not validate_preset_name(args.preset):
            print_error(f"Unknown preset: {args.preset}")
            print_info("Run 'vlab catalog list' to see the available presets.")
            return 1
        bad: List[float] = [x for x in args.x if not validate_positive(x)]
        if bad:
            print_error(f"Kernel arguments must be positive, got {bad}")
            return 1

        config = build_kernel_config(args)
        return execute_config(config, emit=args.out is not None or args.output is not None)

    except KeyboardInterrupt:
        print_error("Operation cancelled by user.")
        return 130

    except Exception as e:
        print_error(f"Kernel command failed: {e}")
        return 1
