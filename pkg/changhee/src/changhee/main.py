#!/usr/bin/env python
"""changhee command line: sequence tables, polynomial evaluation, series expansion, identity verification."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.logging import RichHandler

from .errors import ConfigError, GfEvalError, GfSyntaxError, UnknownIdentityError
from .gfparse import egf_coefficients
from .harness import VerificationSuite, reports_to_csv, reports_to_json
from .ring import format_value, parse_rational
from .sequences import Family, PerturbedProvider, SequenceProvider, build_table, csv_cell
from .settings import HarnessSettings, OutputFormat, load_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_EXPRESSION = 3

FAMILY_NAMES = [family.value for family in Family]


def configure_logging(verbose: int = 0) -> None:
    """Rich log lines on stderr; stdout is reserved for results."""
    if verbose <= 0:
        level = logging.WARNING
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.DEBUG
    handler = RichHandler(console=Console(stderr=True), show_time=False, show_path=False)
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML file with key: value harness defaults")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="output encoding (default json)")
    common.add_argument("--out", type=Path, help="write the result here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug")

    parser = argparse.ArgumentParser(
        prog="changhee",
        description="Exact higher-order Changhee and Euler numbers, with an identity verification harness",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    table = commands.add_parser("table", parents=[common], help="emit a sequence table")
    table.add_argument("--family", required=True, choices=FAMILY_NAMES)
    table.add_argument("--k", type=int, required=True, help="order k >= 1")
    table.add_argument("--n-max", type=int, help="last index (default from config)")

    evaluate = commands.add_parser("eval", parents=[common], help="evaluate a polynomial at a rational x")
    evaluate.add_argument("--family", required=True, choices=FAMILY_NAMES)
    evaluate.add_argument("--k", type=int, required=True)
    evaluate.add_argument("--n", type=int, required=True)
    evaluate.add_argument("--x", required=True, help='rational as "p/q" or an integer; write negatives as --x=-1/2')

    expand = commands.add_parser("expand", parents=[common], help="EGF coefficients of a generating-function expression")
    expand.add_argument("expr", help='e.g. "(2/(2+t))^2 * (1+t)^x"')
    expand.add_argument("--n", type=int, help="last coefficient index (default n_max from config)")

    verify = commands.add_parser("verify", parents=[common], help="run the identity checkers")
    verify.add_argument("--ids", nargs="+", default=["all"], help='identity ids, or "all"')
    verify.add_argument("--n-max", type=int)
    verify.add_argument("--k-max", type=int)
    verify.add_argument("--truncation", type=int, help="series order (default n_max + 4)")
    verify.add_argument("--jobs", type=int, help="worker threads")
    verify.add_argument(
        "--perturb", metavar="FAMILY:N:K", help="add 1 to one table value (harness self-test)"
    )
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            out.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot write output file {out}: {exc.strerror or exc}") from exc
        logger.info("wrote %s", out)


def _error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _settings(args: argparse.Namespace, **overrides) -> HarnessSettings:
    return load_settings(args.config, {"format": args.format, "out": args.out, **overrides})


def cmd_table(args: argparse.Namespace) -> int:
    settings = _settings(args, n_max=args.n_max)
    try:
        table = build_table(Family(args.family), args.k, settings.n_max)
    except ValueError as e:
        _error(str(e))
        return EXIT_USAGE
    text = table.to_csv() if settings.format is OutputFormat.CSV else table.to_json()
    _emit(text, settings.out)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    settings = _settings(args)
    family = Family(args.family)
    if not family.is_polynomial:
        _error(f"{family.value} is a number family; nothing to evaluate at x")
        return EXIT_USAGE
    try:
        x = parse_rational(args.x)
        value = SequenceProvider().value(family, args.n, args.k)(x)
    except ValueError as e:
        _error(str(e))
        return EXIT_USAGE
    if settings.format is OutputFormat.CSV:
        text = f"x,value\n{format_value(x)},{format_value(value)}\n"
    else:
        payload = {"family": family.value, "k": args.k, "n": args.n, "x": format_value(x), "value": format_value(value)}
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, settings.out)
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    settings = _settings(args)
    order = args.n if args.n is not None else settings.n_max
    if order < 0:
        _error(f"--n must be nonnegative, got {order}")
        return EXIT_USAGE
    try:
        values = egf_coefficients(args.expr, order)
    except GfSyntaxError as e:
        _error(e.render())
        print(f"  {args.expr}\n  {' ' * e.offset}^", file=sys.stderr)
        return EXIT_EXPRESSION
    except GfEvalError as e:
        _error(e.render())
        return EXIT_EXPRESSION
    if settings.format is OutputFormat.CSV:
        text = "n,value\n" + "".join(f"{n},{csv_cell(v)}\n" for n, v in enumerate(values))
    else:
        payload = {"expression": args.expr, "n": order, "coefficients": [format_value(v) for v in values]}
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, settings.out)
    return EXIT_OK


def _parse_perturbation(spec: str) -> PerturbedProvider:
    try:
        family, n, k = spec.rsplit(":", 2)
        return PerturbedProvider(Family(family), int(n), int(k))
    except ValueError:
        raise ConfigError(f"--perturb expects FAMILY:N:K with FAMILY one of {', '.join(FAMILY_NAMES)}, got {spec!r}") from None


def cmd_verify(args: argparse.Namespace) -> int:
    settings = _settings(
        args, n_max=args.n_max, k_max=args.k_max, truncation=args.truncation, jobs=args.jobs
    )
    provider = _parse_perturbation(args.perturb) if args.perturb else SequenceProvider()
    suite = VerificationSuite(provider, settings.effective_truncation)
    reports = suite.run(args.ids, settings.grid, settings.jobs)
    text = reports_to_csv(reports) if settings.format is OutputFormat.CSV else reports_to_json(reports)
    _emit(text, settings.out)
    failed = [report.identity_id for report in reports if not report.passed]
    if failed:
        logger.warning("%d of %d identities failed: %s", len(failed), len(reports), ", ".join(failed))
        return EXIT_FAILED
    return EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "eval": cmd_eval,
    "expand": cmd_expand,
    "verify": cmd_verify,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UnknownIdentityError) as e:
        _error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())
