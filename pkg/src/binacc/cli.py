"""Command-line front end: convergence tables and comparison curves.

Subcommands
    coeffs  one row of the transform weight table
    table   grid of plain and averaged partial sums for one (q, r)
    errors  relative-error curves, plain vs accelerated, as CSV
    ln      log(1+q): exact vs fixed-budget plain vs accelerated, as CSV
    beta    incomplete beta: three fixed-budget evaluators vs quadrature, CSV

Exit codes: 0 success, 2 usage error, 3 quadrature-reference failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from fractions import Fraction
from itertools import islice
from typing import Sequence, TextIO

from .coeff import MAX_LEVEL, build_coefficient_table
from .series import accelerated_sum, build_exact_grid, terms
from .special import (
    BetaParams,
    OracleError,
    beta_accelerated,
    beta_binomial_expansion,
    beta_continued_fraction,
    beta_quadrature_oracle,
    ln1p_accelerated,
    ln1p_taylor,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE = 3


def _rational(text: str) -> Fraction:
    # table entries are computed exactly, so the inputs are kept as the
    # decimal the user typed, not as its nearest double
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return Fraction(float(text))
    except (ValueError, OverflowError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _decimal_str(value: Fraction, digits: int) -> str:
    """Render an exact rational at a fixed decimal count, ties away from zero.

    Printed grids hit exact half-way decimals (they are finite sums of finite
    decimals), and those must round by the true value; float formatting would
    round the nearest double instead and can land one digit low.
    """
    num, den = value.numerator, value.denominator
    scaled, rem = divmod(abs(num) * 10**digits, den)
    if 2 * rem >= den:
        scaled += 1
    sign = "-" if num < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binacc",
        description="Tabulate accelerated binomial-series evaluations and "
        "their competitors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("coeffs", help="print one row of the weight table")
    pc.add_argument("--j", type=int, required=True, help="acceleration level")
    pc.add_argument("--format", choices=("rational", "decimal"), default="rational")
    pc.add_argument("--digits", type=int, default=6, help="decimals in decimal format")
    pc.add_argument("--out", help="write to this file instead of stdout")

    pt = sub.add_parser("table", help="grid of partial sums for one (q, r)")
    pt.add_argument("--r", type=_rational, required=True, help="series exponent")
    pt.add_argument("--q", type=_rational, required=True, help="series ratio, >= 0")
    pt.add_argument("--n-max", type=int, default=10, help="last row index")
    pt.add_argument("--j-max", type=int, default=8, help="last averaging level")
    pt.add_argument("--digits", type=int, default=6)
    pt.add_argument("--format", choices=("table", "csv"), default="table")
    pt.add_argument("--out")

    pe = sub.add_parser("errors", help="relative-error curves as CSV")
    pe.add_argument("--r", type=float, required=True)
    pe.add_argument("--q", type=float, nargs="+", default=[0.1, 0.5, 0.9, 1.0])
    pe.add_argument("--j-max", type=int, default=20, help="accelerated curve length")
    pe.add_argument("--n-max", type=int, default=90, help="plain curve length")
    pe.add_argument("--out")

    pl = sub.add_parser("ln", help="log(1+q) comparison as CSV")
    pl.add_argument("--q-min", type=float, default=0.0)
    pl.add_argument("--q-max", type=float, default=2.0)
    pl.add_argument("--q-step", type=float, default=0.05)
    pl.add_argument("--terms", type=int, default=5, help="term budget, odd")
    pl.add_argument("--digits", type=int, default=6)
    pl.add_argument("--out")

    pb = sub.add_parser("beta", help="incomplete beta comparison as CSV")
    pb.add_argument("--a", type=float, default=math.sqrt(0.5))
    pb.add_argument("--b", type=float, default=1.0 / math.sqrt(3.0))
    pb.add_argument("--x-min", type=float, default=0.0)
    pb.add_argument("--x-max", type=float, default=0.99)
    pb.add_argument("--x-step", type=float, default=0.01)
    pb.add_argument("--terms", type=int, default=7, help="term budget, odd")
    pb.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance")
    pb.add_argument("--out")

    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    digits = getattr(args, "digits", 6)
    if not 1 <= digits <= 15:
        parser.error("--digits must lie in [1, 15]")
    if args.command == "coeffs":
        if not 0 <= args.j <= MAX_LEVEL:
            parser.error(f"--j must lie in [0, {MAX_LEVEL}]")
    elif args.command == "table":
        if args.q < 0:
            parser.error("--q must be >= 0")
        if args.j_max < 0 or args.n_max < 0:
            parser.error("--n-max and --j-max must be >= 0")
        if args.j_max > MAX_LEVEL:
            parser.error(f"--j-max must be <= {MAX_LEVEL}")
        if args.n_max < args.j_max:
            parser.error("--n-max must be >= --j-max so every level has a row")
    elif args.command == "errors":
        if any(q < 0 for q in args.q):
            parser.error("--q values must be >= 0")
        if args.j_max < 0 or args.n_max < 0:
            parser.error("--n-max and --j-max must be >= 0")
        if args.j_max > MAX_LEVEL:
            parser.error(f"--j-max must be <= {MAX_LEVEL}")
    elif args.command == "ln":
        if args.terms < 1 or args.terms % 2 == 0:
            parser.error("--terms must be odd and >= 1")
        if args.q_step <= 0 or args.q_max < args.q_min:
            parser.error("need --q-step > 0 and --q-max >= --q-min")
    elif args.command == "beta":
        if args.terms < 1 or args.terms % 2 == 0:
            parser.error("--terms must be odd and >= 1")
        if args.a <= 0 or args.b <= 0:
            parser.error("--a and --b must be > 0")
        if args.x_step <= 0 or args.x_max < args.x_min:
            parser.error("need --x-step > 0 and --x-max >= --x-min")
        if not (0.0 <= args.x_min and args.x_max <= 1.0):
            parser.error("the x grid must lie inside [0, 1]")
        if not 1e-14 <= args.tol <= 1e-6:
            parser.error("--tol must lie in [1e-14, 1e-6]")


def _grid_points(lo: float, hi: float, step: float) -> list[float]:
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(count + 1)]


def _run_coeffs(args: argparse.Namespace, out: TextIO) -> None:
    row = build_coefficient_table(args.j).row(args.j)
    if args.format == "rational":
        print(", ".join(str(c) for c in row), file=out)
    else:
        print(", ".join(f"{float(c):.{args.digits}f}" for c in row), file=out)


def _run_table(args: argparse.Namespace, out: TextIO) -> None:
    digits = args.digits
    # level-0 data extends internally to n_max + j_max so that every level
    # is displayed all the way down to row n_max
    grid = build_exact_grid(args.q, args.r, args.n_max + args.j_max, args.j_max)

    def fmt(v: Fraction) -> str:
        return _decimal_str(v, digits)

    first: dict[int, int] = {}
    if digits == 6:
        if args.r.denominator == 1:
            limit = (1 + args.q) ** args.r.numerator
        else:
            limit = Fraction((1.0 + float(args.q)) ** float(args.r))
        target = fmt(limit)
        for j in range(args.j_max + 1):
            for n in range(j, args.n_max + 1):
                if fmt(grid.value(j, n)) == target:
                    first[j] = n
                    break
    headers = ["n"] + [f"S^{j}" for j in range(args.j_max + 1)]
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(headers + ["first_converged"])
        for n in range(args.n_max + 1):
            cells: list[str] = [str(n)]
            for j in range(args.j_max + 1):
                cells.append(fmt(grid.value(j, n)) if n >= j else "")
            marks = " ".join(f"S^{j}" for j in range(args.j_max + 1) if first.get(j) == n)
            writer.writerow(cells + [marks])
        return
    width = max(digits + 4, 3)
    n_width = max(len(str(args.n_max)), 1)
    print(" ".join([f"{'n':>{n_width}}"] + [f"{h:>{width}}" for h in headers[1:]]), file=out)
    for n in range(args.n_max + 1):
        cells = []
        for j in range(args.j_max + 1):
            if n < j:
                cells.append("")
            else:
                cells.append(fmt(grid.value(j, n)) + ("*" if first.get(j) == n else ""))
        print(" ".join([f"{n:>{n_width}}"] + [f"{c:>{width}}" for c in cells]), file=out)


def _run_errors(args: argparse.Namespace, out: TextIO) -> None:
    table = build_coefficient_table(args.j_max)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["q", "index", "method", "relative_error"])
    for q in args.q:
        ref = (1.0 + q) ** args.r
        total = 0.0
        for n, a in enumerate(islice(terms(q, args.r), args.n_max + 1)):
            total += a
            writer.writerow([f"{q:g}", n, "level0", f"{abs(total - ref) / ref:.15g}"])
        for j in range(args.j_max + 1):
            err = accelerated_sum(q, args.r, j, table).relative_truncation_error
            writer.writerow([f"{q:g}", j, "accelerated", f"{err:.15g}"])


def _run_ln(args: argparse.Namespace, out: TextIO) -> None:
    j = (args.terms - 1) // 2
    n = args.terms - 1
    table = build_coefficient_table(j)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["q", "exact", "taylor", "accelerated"])
    for q in _grid_points(args.q_min, args.q_max, args.q_step):
        writer.writerow(
            [
                f"{q:g}",
                f"{math.log1p(q):.{args.digits}f}",
                f"{ln1p_taylor(q, n):.{args.digits}f}",
                f"{ln1p_accelerated(q, j, table):.{args.digits}f}",
            ]
        )


def _rel_error(value: float, reference: float) -> float:
    if reference == 0.0:
        return 0.0 if value == 0.0 else math.inf
    return abs(value - reference) / abs(reference)


def _run_beta(args: argparse.Namespace, out: TextIO) -> None:
    j = (args.terms - 1) // 2
    table = build_coefficient_table(j)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "x",
            "oracle",
            "binomial",
            "continued_fraction",
            "accelerated",
            "err_binomial",
            "err_cf",
            "err_accelerated",
        ]
    )
    for x in _grid_points(args.x_min, args.x_max, args.x_step):
        p = BetaParams(args.a, args.b, x)
        oracle = beta_quadrature_oracle(p, args.tol)
        binom = beta_binomial_expansion(p, args.terms - 1)
        cf = beta_continued_fraction(p, args.terms)
        accel = beta_accelerated(p, j, table)
        writer.writerow(
            [f"{x:g}"]
            + [f"{v:.12g}" for v in (oracle, binom, cf, accel)]
            + [f"{_rel_error(v, oracle):.6g}" for v in (binom, cf, accel)]
        )


_HANDLERS = {
    "coeffs": _run_coeffs,
    "table": _run_table,
    "errors": _run_errors,
    "ln": _run_ln,
    "beta": _run_beta,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    out_path = getattr(args, "out", None)
    stream = open(out_path, "w", encoding="utf-8", newline="") if out_path else sys.stdout
    try:
        _HANDLERS[args.command](args, stream)
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    finally:
        if out_path:
            stream.close()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
