"""Command-line front end.

Exit codes: 0 success, 1 verification failure (or an oracle mismatch),
2 argument errors, 3 internal invariant violations.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

import mpmath

from analysis.error_terms import alpha_exponent
from analysis.residuals import residual_profile
from arith.primes import prime_table
from config.settings import CensusConfig
from core.enums import OutputFormat, SeriesCase, Verb
from core.errors import (
    CapacityError, DivergentProductError, InvalidDiscriminantError, InvariantViolation,
)
from data.csv_export import CoefficientWriter, CsvTableWriter, OracleComparisonWriter, ResidualWriter
from data.json_lines import JsonLinesWriter, constant_record
from euler.constants import (
    constant_cyclic, constant_general, constant_general_alt, constants_pure_cubic,
)
from euler.precision import HighPrecReal
from series.counting import count, count_by_discriminant
from series.oracles import oracle_cyclic, oracle_pure_cubic
from series.sieve import coefficients
from series.spec import build_spec
from utils.logging_setup import setup_logging
from .command import Command, parse_checkpoints, parse_mu
from .verify import run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubic-census",
        description="Count cubic fields by quadratic resolvent and evaluate their asymptotic constants",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="text",
                        help="Output format (default: text)")
    common.add_argument("--precision", type=int, default=None, help="Working precision in bits")
    common.add_argument("--prime-cutoff", type=int, default=None,
                        help="Primes <= P0 enter Euler products exactly")
    common.add_argument("--workers", type=int, default=None, help="Sieve threads")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings only")

    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("constants", parents=[common], help="Asymptotic constants C (and D)")
    p.add_argument("--d", type=int, required=True, help="Discriminant (1 = cyclic, -3 = pure cubic)")

    p = sub.add_parser("count", parents=[common], help="Exact count M(K2, X) and main term")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--limit", type=int, required=True, help="Bound X on the conductor")
    p.add_argument("--oracle", action="store_true", help="Compare with direct field enumeration")
    p.add_argument("--by-discriminant", action="store_true",
                   help="Bound |disc K| <= X instead of the conductor")

    p = sub.add_parser("series", parents=[common], help="Nonzero coefficients a(n), n <= X")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="Run the acceptance battery")
    p.add_argument("--quick", action="store_true", help="Reduced sizes for a fast run")
    p.add_argument("--report-dir", type=Path, default=None,
                   help="Keep workbook, config, JSON lines and log under this folder")

    p = sub.add_parser("alpha", parents=[common], help="Error exponent from mu(1/2)")
    p.add_argument("--mu", type=str, required=True, help="mu(1/2), e.g. 0.5 or 1/2")

    p = sub.add_parser("residuals", parents=[common], help="Residuals at checkpoints (CSV)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--checkpoints", type=str, required=True, help="Comma-separated X values")

    return parser


def _command_from_args(args: argparse.Namespace, config: CensusConfig) -> Command:
    checkpoints = ()
    if getattr(args, "checkpoints", None):
        checkpoints = parse_checkpoints(args.checkpoints)
    return Command(
        verb=Verb.from_string(args.verb),
        d=getattr(args, "d", None),
        limit=getattr(args, "limit", None),
        precision_bits=args.precision if args.precision is not None else config.precision.bits,
        prime_cutoff=args.prime_cutoff if args.prime_cutoff is not None else config.precision.prime_cutoff,
        format=OutputFormat.from_string(args.format),
        oracle=getattr(args, "oracle", False),
        by_discriminant=getattr(args, "by_discriminant", False),
        quick=getattr(args, "quick", False),
        mu=getattr(args, "mu", None),
        checkpoints=checkpoints,
        workers=args.workers if args.workers is not None else config.sieve.workers,
        report_dir=getattr(args, "report_dir", None),
    )


# --- Verbs ---

def _emit_constants(cmd: Command, records: List[tuple], out: TextIO) -> None:
    if cmd.format is OutputFormat.JSON:
        writer = JsonLinesWriter(out)
        for name, value in records:
            writer.emit(constant_record(name, cmd.d, value))
    elif cmd.format is OutputFormat.CSV:
        table = CsvTableWriter(out, ["constant", "D", "value", "error_bound", "precision_bits"])
        for name, value in records:
            r = constant_record(name, cmd.d, value)
            table.write(r.values())
    else:
        for name, value in records:
            out.write(f"{name}(D={cmd.d}) = {value.to_decimal_string()}  (+/- {value.error_string()})\n")


def _route_delta(a: HighPrecReal, b: HighPrecReal) -> HighPrecReal:
    with mpmath.workprec(a.precision_bits + 16):
        delta = abs(a.value - b.value)
    return HighPrecReal(delta, a.precision_bits, a.error_bound + b.error_bound)


def run_constants(cmd: Command, config: CensusConfig, out: TextIO) -> int:
    p = config.precision
    args = (p.bits, p.prime_cutoff, p.guard_bits)
    if cmd.d == 1:
        c = constant_cyclic(*args)
        alt = constant_general_alt(1, *args)
        records = [("C", c), ("C_alt", alt), ("C_route_delta", _route_delta(c, alt))]
    elif cmd.d == -3:
        c, d = constants_pure_cubic(*args)
        records = [("C", c), ("D", d)]
    else:
        c = constant_general(cmd.d, *args)
        alt = constant_general_alt(cmd.d, *args)
        records = [("C", c), ("C_alt", alt), ("C_route_delta", _route_delta(c, alt))]
    _emit_constants(cmd, records, out)
    return EXIT_OK


def run_count(cmd: Command, config: CensusConfig, out: TextIO) -> int:
    spec = build_spec(cmd.d)
    if cmd.by_discriminant:
        report = count_by_discriminant(spec, cmd.limit, config.precision, cmd.workers)
    else:
        report = count(spec, cmd.limit, config.precision, cmd.workers)
    record = {"D": cmd.d, **report.to_dict()}
    if cmd.format is OutputFormat.JSON:
        JsonLinesWriter(out).emit(record)
    elif cmd.format is OutputFormat.CSV:
        table = CsvTableWriter(out, list(record))
        table.write(["" if v is None else v for v in record.values()])
    else:
        for key, value in record.items():
            out.write(f"{key}: {value}\n")
        if not spec.is_exact:
            out.write("note: main part only; no exact count for this discriminant\n")

    if not cmd.oracle:
        return EXIT_OK
    stream = coefficients(spec, cmd.limit, cmd.workers)
    oracle = (oracle_cyclic if spec.case is SeriesCase.CYCLIC else oracle_pure_cubic)(cmd.limit)
    conductors = sorted(set(oracle) | {n for n, _ in stream.nonzero()})
    mismatches = 0
    rows = []
    for f in conductors:
        series_value, oracle_value = stream[f], oracle.get(f, 0)
        match = series_value == oracle_value
        mismatches += not match
        rows.append((f, series_value, oracle_value, "match" if match else "MISMATCH"))
    if cmd.format is OutputFormat.JSON:
        writer = JsonLinesWriter(out)
        for f, s, o, m in rows:
            writer.emit({"conductor": f, "series": s, "oracle": o, "match": m == "match"})
    else:
        table = OracleComparisonWriter(out)
        for row in rows:
            table.write(row)
    logger.info("Oracle comparison up to %d: %d conductors, %d mismatches", cmd.limit, len(rows), mismatches)
    return EXIT_OK if mismatches == 0 else EXIT_VERIFY_FAILED


def run_series(cmd: Command, config: CensusConfig, out: TextIO) -> int:
    spec = build_spec(cmd.d)
    if not spec.is_exact:
        logger.error("D=%d has no exact series (%s); refusing to print coefficients",
                     cmd.d, spec.case.value)
        return EXIT_USAGE
    stream = coefficients(spec, cmd.limit, cmd.workers)
    if cmd.format is OutputFormat.JSON:
        writer = JsonLinesWriter(out)
        for n, value in stream.nonzero():
            writer.emit({"n": n, "a_n": value})
    else:
        CoefficientWriter(out).write_stream(stream)
    return EXIT_OK


def run_alpha(cmd: Command, out: TextIO) -> int:
    alpha = alpha_exponent(parse_mu(cmd.mu))
    if cmd.format is OutputFormat.JSON:
        JsonLinesWriter(out).emit({"mu_half": cmd.mu, "alpha": str(alpha)})
    else:
        out.write(f"{alpha}\n")
    return EXIT_OK


def run_residuals(cmd: Command, config: CensusConfig, out: TextIO) -> int:
    spec = build_spec(cmd.d)
    rows = residual_profile(spec, cmd.checkpoints, config.precision, cmd.workers)
    if cmd.format is OutputFormat.JSON:
        writer = JsonLinesWriter(out)
        for row in rows:
            writer.emit(dict(zip(ResidualWriter.HEADER, row.as_row())))
    else:
        table = ResidualWriter(out)
        for row in rows:
            table.write(row.as_row())
    return EXIT_OK


def run_verify(cmd: Command, config: CensusConfig, out: TextIO) -> int:
    writer = JsonLinesWriter(out) if cmd.format is OutputFormat.JSON else None

    def show(result) -> None:
        if writer is not None:
            writer.emit(result.to_dict())
        else:
            out.write(f"{'PASS' if result.passed else 'FAIL'}  {result.name:<24} {result.detail}\n")
            out.flush()

    passed = run_verification(config, cmd.quick, cmd.report_dir, show)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


# --- Entry point ---

def run(argv: Optional[List[str]] = None, out: TextIO | None = None) -> int:
    """Parse ``argv``, run one verb, return the exit status."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    setup_logging(level=level)

    config = CensusConfig.from_env()
    try:
        cmd = _command_from_args(args, config)
    except ValueError as e:
        logger.error("Bad argument: %s", e)
        return EXIT_USAGE
    config.precision.bits = cmd.precision_bits
    config.precision.prime_cutoff = cmd.prime_cutoff
    config.sieve.workers = cmd.workers

    errors = cmd.validate() + config.validate()
    if errors:
        for err in errors:
            logger.error(err)
        return EXIT_USAGE

    try:
        if cmd.limit is not None and cmd.limit > config.sieve.max_limit:
            raise CapacityError(f"--limit {cmd.limit} exceeds the sieve capacity {config.sieve.max_limit}")
        if config.sieve.prime_cache and cmd.limit is not None:
            prime_table(max(cmd.limit, 2), config.sieve.prime_cache, config.sieve.max_limit)
        if cmd.verb is Verb.CONSTANTS:
            return run_constants(cmd, config, out)
        if cmd.verb is Verb.COUNT:
            return run_count(cmd, config, out)
        if cmd.verb is Verb.SERIES:
            return run_series(cmd, config, out)
        if cmd.verb is Verb.ALPHA:
            return run_alpha(cmd, out)
        if cmd.verb is Verb.RESIDUALS:
            return run_residuals(cmd, config, out)
        return run_verify(cmd, config, out)
    except (InvalidDiscriminantError, CapacityError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except (InvariantViolation, DivergentProductError) as e:
        logger.critical("Internal invariant violated: %s", e)
        return EXIT_INVARIANT
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_USAGE
