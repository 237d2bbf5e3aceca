"""Evaluation of (1+q)**r binomial series and its averaging acceleration.

Three routes live here: plain truncated partial sums, the full grid of
averaged partial sums (each level is the 1/2, 1/4, 1/4 combination of the
level below), and the production evaluator that reaches the level-j first
element directly as a weighted sum of the first 2j+1 terms.

Float paths add terms in strictly ascending index order with no compensation,
so repeated runs agree bit for bit; exact-rational variants of the grid and
of the accelerated evaluator back the printed tables and the termination
studies, where half-way decimals must round by their true value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator

from .coeff import CoefficientTable

__all__ = [
    "BinomialInput",
    "EvalResult",
    "PartialSumGrid",
    "accelerated_sum",
    "accelerated_sum_exact",
    "binomial_power",
    "build_exact_grid",
    "build_grid",
    "falling_factorial",
    "partial_sum_level0",
    "relative_truncation_error",
    "term",
    "terms",
]


def falling_factorial(r: float, k: int) -> float:
    """Product r*(r-1)*...*(r-k+1); the empty product (k = 0) is 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = 1.0
    for i in range(k):
        out *= r - i
    return out


def terms(q: float, r: float) -> Iterator[float]:
    """Yield the series terms a_0, a_1, ... of (1+q)**r, starting at a_0 = 1.

    Uses the ratio recurrence a_k = a_{k-1} * (r - k + 1) * q / k, which keeps
    intermediate magnitudes proportional to the terms themselves.
    """
    a = 1.0
    k = 0
    while True:
        yield a
        k += 1
        a = a * (r - k + 1) * q / k


def term(q: float, r: float, k: int) -> float:
    """Single series term a_k = falling_factorial(r, k) / k! * q**k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return next(islice(terms(q, r), k, None))


def partial_sum_level0(q: float, r: float, n: int, *, compensated: bool = False) -> float:
    """Plain truncated sum of terms 0..n, added in ascending order.

    compensated=True switches to math.fsum; the default plain loop is the
    reproducible mode behind every table and golden output.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    seq = islice(terms(q, r), n + 1)
    if compensated:
        return math.fsum(seq)
    total = 0.0
    for a in seq:
        total += a
    return total


def relative_truncation_error(approx: float, q: float, r: float) -> float:
    """|approx - (1+q)**r| / (1+q)**r against the platform power.

    Meaningful for q >= 0, where the reference is strictly positive.
    """
    ref = (1.0 + q) ** r
    return abs(approx - ref) / ref


def _in_scope(q: float, r: float) -> bool:
    # the acceleration analysis covers r < 0 with 0 <= q <= 1; anything else
    # is still computed but flagged on the result
    return r < 0 and 0.0 <= q <= 1.0


@dataclass(frozen=True)
class EvalResult:
    """Outcome of a series evaluation.

    relative_truncation_error is present only when a reference value exists
    for the inputs; out_of_scope marks evaluations outside the regime the
    acceleration is designed for (q > 1 or r >= 0).
    """

    value: float
    terms_used: int
    method: str
    relative_truncation_error: float | None = None
    out_of_scope: bool = False


@dataclass(frozen=True)
class PartialSumGrid:
    """Grid of averaged partial sums.

    levels[j][i] holds the level-j entry at index n = j + i: level 0 spans
    n in [0, n_max] and each later level loses one entry at both ends, so
    level j spans n in [j, n_max - j].

    Entries are floats from build_grid and Fractions from build_exact_grid;
    the accessors work the same either way.
    """

    q: float
    r: float
    n_max: int
    j_max: int
    levels: tuple[tuple[float, ...], ...]

    def has(self, j: int, n: int) -> bool:
        return 0 <= j <= self.j_max and j <= n <= self.n_max - j

    def value(self, j: int, n: int) -> float:
        if not self.has(j, n):
            raise ValueError(f"no entry at level {j}, index {n}")
        return self.levels[j][n - j]

    def diagonal(self, j: int) -> float:
        """First element of level j; uses exactly the first 2j+1 terms."""
        return self.value(j, j)


def build_grid(q: float, r: float, n_max: int, j_max: int) -> PartialSumGrid:
    """Build the averaged grid: level 0 by running summation, level j by the
    1/2, 1/4, 1/4 combination of level j-1 at indices n, n-1, n+1.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    if n_max < 2 * j_max:
        raise ValueError("need n_max >= 2*j_max so every level keeps an entry")
    level0 = []
    total = 0.0
    for a in islice(terms(q, r), n_max + 1):
        total += a
        level0.append(total)
    levels = [tuple(level0)]
    for _j in range(1, j_max + 1):
        prev = levels[-1]
        levels.append(
            tuple(
                0.5 * prev[i + 1] + 0.25 * prev[i] + 0.25 * prev[i + 2]
                for i in range(len(prev) - 2)
            )
        )
    return PartialSumGrid(q=q, r=r, n_max=n_max, j_max=j_max, levels=tuple(levels))


def build_exact_grid(
    q: Fraction | int | str,
    r: Fraction | int | str,
    n_max: int,
    j_max: int,
) -> PartialSumGrid:
    """build_grid in exact rational arithmetic.

    Same shape and indexing as build_grid, but every entry is a Fraction, so
    the result is free of summation roundoff entirely; this is the route
    behind printed tables, where a half-way decimal must round by its true
    value and not by its nearest-double proxy.  Pass q and r as Fraction, int
    or string for the same reason as accelerated_sum_exact.
    """
    qx = Fraction(q)
    rx = Fraction(r)
    if qx < 0:
        raise ValueError("q must be >= 0")
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    if n_max < 2 * j_max:
        raise ValueError("need n_max >= 2*j_max so every level keeps an entry")
    level0 = []
    total = Fraction(0)
    a = Fraction(1)
    for k in range(n_max + 1):
        if k:
            a *= (rx - k + 1) * qx / k
        total += a
        level0.append(total)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    levels = [tuple(level0)]
    for _j in range(1, j_max + 1):
        prev = levels[-1]
        levels.append(
            tuple(
                half * prev[i + 1] + quarter * prev[i] + quarter * prev[i + 2]
                for i in range(len(prev) - 2)
            )
        )
    return PartialSumGrid(q=qx, r=rx, n_max=n_max, j_max=j_max, levels=tuple(levels))


def accelerated_sum(q: float, r: float, j: int, table: CoefficientTable) -> EvalResult:
    """Weighted 2j+1-term evaluation of (1+q)**r, the production route.

    Dot product of the level-j weight row with terms a_0..a_2j, accumulated
    in ascending k.  Matches the grid diagonal in exact arithmetic; in floats
    the two routes agree to roundoff of the shared cancellation.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    row = table.float_row(j)  # validates j
    total = 0.0
    for c, a in zip(row, terms(q, r)):
        total += c * a
    return EvalResult(
        value=total,
        terms_used=2 * j + 1,
        method="accelerated",
        relative_truncation_error=relative_truncation_error(total, q, r),
        out_of_scope=not _in_scope(q, r),
    )


def accelerated_sum_exact(
    q: Fraction | int | str, r: int, j: int, table: CoefficientTable
) -> Fraction:
    """Exact-rational accelerated evaluation for rational q and integer r.

    Termination-study route, never the production path.  Pass q as Fraction,
    int or string: a float q would be converted from its binary expansion,
    which is usually not the ratio you meant.
    """
    if isinstance(r, float):
        if not r.is_integer():
            raise ValueError("exact evaluation needs an integer exponent")
        r = int(r)
    qx = Fraction(q)
    if qx < 0:
        raise ValueError("q must be >= 0")
    total = Fraction(0)
    a = Fraction(1)
    for k, c in enumerate(table.row(j)):
        if k:
            a *= Fraction(r - k + 1, k) * qx
        total += c * a
    return total


@dataclass(frozen=True)
class BinomialInput:
    """Operands of (x + y)**r; requires x/y >= 0 and a real-valued y**r."""

    x: float
    y: float
    r: float

    def __post_init__(self) -> None:
        if self.y == 0:
            raise ValueError("y must be nonzero")
        if self.x / self.y < 0:
            raise ValueError("x and y must have the same sign")
        if self.y < 0 and not float(self.r).is_integer():
            raise ValueError("y < 0 needs an integer exponent for a real result")

    @property
    def q(self) -> float:
        return self.x / self.y


def binomial_power(inp: BinomialInput, j: int, table: CoefficientTable) -> EvalResult:
    """(x + y)**r evaluated as y**r times the accelerated sum at q = x/y."""
    inner = accelerated_sum(inp.q, inp.r, j, table)
    return EvalResult(
        value=inp.y**inp.r * inner.value,
        terms_used=inner.terms_used,
        method="binomial_power",
        relative_truncation_error=inner.relative_truncation_error,
        out_of_scope=inner.out_of_scope,
    )
