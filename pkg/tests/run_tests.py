#!/usr/bin/env python3
"""
run_tests.py
############

Test runner for the vlab unit tests.

    python tests/run_tests.py                    # every test_*.py module
    python tests/run_tests.py gamma riesz        # test_gamma.py and test_riesz.py only
    python tests/run_tests.py -k Perron          # test methods or classes matching a substring
    python tests/run_tests.py --fast -q          # skip the slow numerical modules, dots only
"""

import argparse
import os
import sys
import unittest

# Add parent directory to path so we can import vlab modules
TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.dirname(TESTS_DIR))

# Modules that evaluate many contour integrals or long conjugate series
SLOW_MODULES = ("test_riesz", "test_rho_integral", "test_identities")


def module_name(name: str) -> str:
    """Accepts 'gamma', 'test_gamma', 'test_gamma.py' or 'tests/test_gamma.py'."""
    base = os.path.splitext(os.path.basename(name))[0]
    return base if base.startswith("test_") else f"test_{base}"


def available_modules(pattern: str = "test_*.py") -> list:
    loader = unittest.TestLoader()
    suite = loader.discover(TESTS_DIR, pattern=pattern, top_level_dir=os.path.dirname(TESTS_DIR))
    names = set()
    for group in suite:
        for case in _flatten(group):
            names.add(case.__class__.__module__.split(".")[-1])
    return sorted(names)


def _flatten(suite):
    for item in suite:
        if isinstance(item, unittest.TestSuite):
            yield from _flatten(item)
        else:
            yield item


def build_suite(modules=None, pattern: str = "test_*.py", fast: bool = False, keywords=()) -> unittest.TestSuite:
    """Discovers every module matching pattern, or loads only the named modules."""
    loader = unittest.TestLoader()
    if keywords:
        loader.testNamePatterns = [f"*{k}*" for k in keywords]
    if modules:
        names = [module_name(m) for m in modules]
        unknown = [n for n in names if not os.path.exists(os.path.join(TESTS_DIR, f"{n}.py"))]
        if unknown:
            raise SystemExit(f"unknown test module(s): {', '.join(unknown)}")
        return unittest.TestSuite(loader.loadTestsFromName(f"tests.{n}") for n in names)
    if not fast:
        return loader.discover(TESTS_DIR, pattern=pattern, top_level_dir=os.path.dirname(TESTS_DIR))
    names = [n for n in available_modules(pattern) if n not in SLOW_MODULES]
    return unittest.TestSuite(loader.loadTestsFromName(f"tests.{n}") for n in names)


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run the vlab unit tests.")
    parser.add_argument("modules", nargs="*", help="test modules to run, e.g. gamma or test_riesz (default: all)")
    parser.add_argument("-p", "--pattern", default="test_*.py", help="discovery pattern when no module is named")
    parser.add_argument("-k", dest="keywords", action="append", default=[],
                        help="only run tests whose name contains this substring (repeatable)")
    parser.add_argument("--fast", action="store_true", help=f"skip {', '.join(SLOW_MODULES)}")
    parser.add_argument("-f", "--failfast", action="store_true", help="stop on the first failure")
    parser.add_argument("-l", "--list", action="store_true", help="list the discovered modules and exit")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-q", "--quiet", action="store_const", const=1, dest="verbosity")
    verbosity.add_argument("-v", "--verbose", action="store_const", const=2, dest="verbosity")
    parser.set_defaults(verbosity=2)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    if args.list:
        for name in available_modules(args.pattern):
            print(name)
        return 0
    suite = build_suite(args.modules, args.pattern, args.fast, args.keywords)
    if args.verbosity > 1:
        scope = ", ".join(module_name(m) for m in args.modules) if args.modules else "all vlab unit tests"
        print(f"Running {scope} ({suite.countTestCases()} tests)...")
        print("=" * 50)
    runner = unittest.TextTestRunner(verbosity=args.verbosity, failfast=args.failfast)
    result = runner.run(suite)
    return 0 if result.wasSuccessful() else 1


if __name__ == "__main__":
    sys.exit(main())
