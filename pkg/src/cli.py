#!/usr/bin/env python3
"""
Command-line front end.

    python src/cli.py build    --phi data/phi2.json [--format json] [--out FILE]
    python src/cli.py verify   --phi data/phi0.json [--trials 100 --seed 7]
    python src/cli.py verify   --n 3 --trials 25
    python src/cli.py generic  --n 2 [--check]
    python src/cli.py examples
    python src/cli.py colon    --n 4

Exit codes: 0 ok, 1 a required check failed, 2 bad input / flags / capacity,
3 degenerate inverse system (catalecticant determinant 0).
"""

import argparse
import os
import sys
from typing import List, Optional

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import config
from src.console import banner, log, set_verbose
from src.divpow import build_phi, load_inverse_system
from src.errors import DegenerateInverseSystem, GorensteinError, InputError
from src.fixtures import compare_all
from src.resolution import build_resolution
from src.serialize import emit, render_resolution
from src.verify import VerificationReport, check_colon_ideal, full_report, run_random_trials

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


_UNSET = object()


def _emit_report(report: VerificationReport, args, out=_UNSET) -> int:
    out = args.out if out is _UNSET else out
    if out and out.lower().endswith(".csv"):
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        report.to_csv(out)
        log("Done", f"wrote {out}")
    else:
        text = report.to_json() if args.format == "json" else report.to_text()
        emit(text, out)
    for failure in report.failures():
        log("Warning", f"{failure.name}: {failure.witness}")
    if report.degenerate:
        return EXIT_DEGENERATE
    return EXIT_OK if report.passed else EXIT_FAILED


def _phi_path(phi: str) -> str:
    """A --phi value that is not an existing path is looked up in the data directory."""
    if os.path.exists(phi):
        return phi
    candidate = os.path.join(config.DATA_DIR, phi)
    return candidate if os.path.exists(candidate) else phi


def cmd_build(args) -> int:
    if not args.phi:
        raise InputError("build needs --phi <path>")
    inverse_system = load_inverse_system(_phi_path(args.phi))
    log("Build", f"n={inverse_system.n}, Phi = {inverse_system}")
    R = build_resolution(inverse_system)
    emit(render_resolution(R, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.phi and not (args.n is not None and args.trials):
        raise InputError("verify needs --phi <path>, or --n <int> with --trials > 0")
    report = VerificationReport("verify")
    n = args.n
    if args.phi:
        inverse_system = load_inverse_system(_phi_path(args.phi))
        n = inverse_system.n
        banner("Verify", f"{args.phi}: Phi = {inverse_system}")
        report.extend(full_report(inverse_system, args.phi))
    if args.trials:
        report.extend(run_random_trials(n, args.trials, args.seed))
    return _emit_report(report, args)


def cmd_generic(args) -> int:
    if args.n is None:
        raise InputError("generic needs --n <int>")
    inverse_system = build_phi(args.n, generic=True)
    log("Build", f"generic complex for n={args.n}")
    R = build_resolution(inverse_system)
    emit(render_resolution(R, args.format), args.out)
    if args.check:
        return _emit_report(full_report(inverse_system), args, out=None)
    return EXIT_OK


def cmd_examples(args) -> int:
    return _emit_report(compare_all(), args)


def cmd_colon(args) -> int:
    if args.n is None:
        raise InputError("colon needs --n <int>")
    return _emit_report(check_colon_ideal(args.n), args)


def _non_negative(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {number}")
    return number


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--phi', type=str, help='Inverse system JSON file')
    common.add_argument('--n', type=int, help='n (inverse system of degree 2n-2)')
    common.add_argument('--format', choices=['text', 'json'], default=config.DEFAULT_FORMAT,
                        help=f'Output format (default {config.DEFAULT_FORMAT})')
    common.add_argument('--out', '-o', type=str, help='Write output to this file (.csv for report tables)')
    common.add_argument('--seed', type=_non_negative, default=config.DEFAULT_SEED,
                        help=f'Seed for random trials (default {config.DEFAULT_SEED})')
    common.add_argument('--trials', type=_non_negative, default=config.DEFAULT_TRIALS,
                        help=f'Number of random specializations (default {config.DEFAULT_TRIALS})')
    common.add_argument('--verbose', '-v', action='store_true', help='Print progress to stderr')

    parser = argparse.ArgumentParser(description='Gorenstein-linear resolutions from inverse systems')
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('build', parents=[common], help='Build the complex of an inverse system').set_defaults(handler=cmd_build)
    sub.add_parser('verify', parents=[common], help='Run the verification suite').set_defaults(handler=cmd_verify)
    generic = sub.add_parser('generic', parents=[common], help='Symbolic complex over Z[x,y,z,t]')
    generic.add_argument('--check', action='store_true', help='Also run the symbolic checks')
    generic.set_defaults(handler=cmd_generic)
    sub.add_parser('examples', parents=[common], help='Reproduce the four worked examples').set_defaults(handler=cmd_examples)
    sub.add_parser('colon', parents=[common], help='Check the colon-ideal inverse system').set_defaults(handler=cmd_colon)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    set_verbose(args.verbose or config.VERBOSE)
    try:
        return args.handler(args)
    except DegenerateInverseSystem as e:
        log("Error", str(e))
        return EXIT_DEGENERATE
    except GorensteinError as e:
        log("Error", str(e))
        return EXIT_USAGE
    except OSError as e:
        log("Error", f"cannot write output: {e}")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
