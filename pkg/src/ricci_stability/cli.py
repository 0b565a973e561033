"""Command-line front end.

Exit codes: 0 on success (a NotCertified verdict is a success), 1 for usage
errors, 2 for computational failures.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .branching import Bundle
from .errors import RicciStabilityError
from .iteration import MAX_STEPS, NEWTON_TOL, Direction, ProductMetric, einstein_rays, iterate, linearization
from .registry import RegistryError, resolve_space, resolve_structure
from .report import (
    RENDERERS,
    fixed_points_payload,
    make_report,
    rate_payload,
    space_provenance,
    spectrum_payload,
    stability_payload,
    structure_provenance,
    trace_payload,
)
from .spectrum import bundle_spectrum
from .stability import RATE_WINDOW_FACTOR, check_stability, contraction_rate


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with status 2
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=sorted(RENDERERS), default="json")
    common.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")

    parser = _Parser(prog="ricci-stability", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="Lichnerowicz spectrum of a bundle")
    p.add_argument("space")
    p.add_argument("--bundle", choices=[b.value for b in Bundle], default=Bundle.SYM2.value)
    p.add_argument("--window-factor", type=_rational, default=Fraction(1))

    p = sub.add_parser("check", parents=[common], help="stability verdict")
    p.add_argument("space")

    p = sub.add_parser("rate", parents=[common], help="predicted contraction rate")
    p.add_argument("space")

    p = sub.add_parser("fixed-points", parents=[common], help="Einstein rays of a two-summand structure")
    p.add_argument("structure", help="jensen:n or a config file")

    p = sub.add_parser("iterate", parents=[common], help="simulate the Ricci iteration")
    p.add_argument("structure", help="jensen:n or a config file")
    p.add_argument("--t0", type=float, required=True, help="initial ratio x1/x2")
    p.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.FORWARD.value)
    p.add_argument("--steps", type=int, default=MAX_STEPS)
    p.add_argument("--tol", type=float, default=NEWTON_TOL)
    return parser


def _execute(args: argparse.Namespace) -> dict:
    echo = {"name": args.command}
    if args.command in ("spectrum", "check", "rate"):
        space = resolve_space(args.space)
        echo["space"] = args.space
        if args.command == "spectrum":
            if args.window_factor < 1:
                raise UsageError("--window-factor must be >= 1")
            echo.update(bundle=args.bundle, window_factor=str(args.window_factor))
            lines = bundle_spectrum(space, Bundle(args.bundle), args.window_factor)
            return make_report(
                echo, spectrum_payload(space, Bundle(args.bundle), lines), space_provenance(space, args.window_factor)
            )
        if args.command == "check":
            report = check_stability(space)
            return make_report(echo, stability_payload(report), space_provenance(space, Fraction(1)))
        rate = contraction_rate(space)
        return make_report(echo, rate_payload(space, rate), space_provenance(space, Fraction(RATE_WINDOW_FACTOR)))

    structure = resolve_structure(args.structure)
    echo["structure"] = args.structure
    if args.command == "fixed-points":
        lins = [linearization(structure, fp) for fp in einstein_rays(structure)]
        return make_report(echo, fixed_points_payload(structure, lins), structure_provenance(structure))

    if not args.t0 > 0:
        raise UsageError("--t0 must be positive")
    if args.steps < 1 or not args.tol > 0:
        raise UsageError("--steps and --tol must be positive")
    echo.update(t0=args.t0, direction=args.direction, steps=args.steps, tol=args.tol)
    trace = iterate(structure, ProductMetric(args.t0, 1.0), args.direction, args.steps, args.tol)
    return make_report(echo, trace_payload(trace), structure_provenance(structure))


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = _execute(args)
    except (UsageError, RegistryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RicciStabilityError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = RENDERERS[args.format](report)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
