"""Applications of the averaging transform: log(1+q) and the incomplete beta
integral, each with fixed-term-budget competitors and, for beta, a
self-contained double-exponential quadrature reference.

Every evaluator here is a pure function of its arguments; the optional
counter keyword only tallies how many series terms (or continued-fraction
coefficients) an evaluation consumed, for instrumentation in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coeff import CoefficientTable

__all__ = [
    "BetaParams",
    "CFDepth",
    "OracleError",
    "TermCounter",
    "beta_accelerated",
    "beta_binomial_expansion",
    "beta_continued_fraction",
    "beta_quadrature_oracle",
    "ln1p_accelerated",
    "ln1p_taylor",
]


class OracleError(RuntimeError):
    """The quadrature reference failed to converge to the requested tolerance."""


class TermCounter:
    """Mutable tally of consumed terms; pass one in to instrument a call."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def add(self, n: int = 1) -> None:
        self.count += n


@dataclass(frozen=True)
class BetaParams:
    """Parameters (a, b) and upper limit x of the beta integral
    int_0^x t**(a-1) (1-t)**(b-1) dt, with a, b > 0 and 0 <= x <= 1."""

    a: float
    b: float
    x: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.b > 0):
            raise ValueError("a and b must be > 0")
        if not 0.0 <= self.x <= 1.0:
            raise ValueError("x must lie in [0, 1]")

    @property
    def u(self) -> float:
        """Substituted ratio x/(1-x); +inf at x = 1."""
        return math.inf if self.x == 1.0 else self.x / (1.0 - self.x)


@dataclass(frozen=True)
class CFDepth:
    """Number of continued-fraction coefficients to keep (d_1..d_n)."""

    n_coeffs: int

    def __post_init__(self) -> None:
        if self.n_coeffs < 1:
            raise ValueError("need at least one coefficient")


def ln1p_taylor(q: float, n: int, *, counter: TermCounter | None = None) -> float:
    """Truncated alternating expansion of log(1+q): terms k = 0..n of
    (-1)**k q**(k+1) / (k+1), summed ascending."""
    if n < 0:
        raise ValueError("n must be >= 0")
    total = 0.0
    sign = 1.0
    p = q
    for k in range(n + 1):
        total += sign * p / (k + 1)
        sign = -sign
        p *= q
    if counter is not None:
        counter.add(n + 1)
    return total


def ln1p_accelerated(
    q: float, j: int, table: CoefficientTable, *, counter: TermCounter | None = None
) -> float:
    """Weighted 2j+1-term expansion of log(1+q); stays useful well past q = 1,
    where the plain expansion stops converging."""
    total = 0.0
    sign = 1.0
    p = q
    for k, c in enumerate(table.float_row(j)):
        total += c * sign * p / (k + 1)
        sign = -sign
        p *= q
    if counter is not None:
        counter.add(2 * j + 1)
    return total


def beta_binomial_expansion(
    p: BetaParams, n: int, *, counter: TermCounter | None = None
) -> float:
    """x**a times the term-by-term integral of the expanded (1-t)**(b-1)
    factor, truncated after n+1 terms.

    Accurate for x well below 1; the expansion degrades as x -> 1 (x = 1 is
    accepted, since comparing evaluators there is the point).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b, x = p.a, p.b, p.x
    total = 0.0
    t = 1.0  # (-1)**k (b-1)_k / k! * x**k
    for k in range(n + 1):
        total += t / (k + a)
        t *= (k + 1 - b) * x / (k + 1)
    if counter is not None:
        counter.add(n + 1)
    return x**a * total


def beta_continued_fraction(
    p: BetaParams, depth: CFDepth | int, *, counter: TermCounter | None = None
) -> float:
    """Fixed-depth continued fraction for the beta integral, evaluated bottom
    up from the deepest kept coefficient (the dropped tail is replaced by 0).

    Raises ZeroDivisionError if a partial denominator lands exactly on zero;
    that is a numerical failure of the truncation depth, not patched over.
    """
    n = depth.n_coeffs if isinstance(depth, CFDepth) else int(depth)
    if n < 1:
        raise ValueError("need at least one coefficient")
    a, b, x = p.a, p.b, p.x
    if x == 0.0 or x == 1.0:
        # prefactor x**a (1-x)**b vanishes
        return 0.0

    def coeff(i: int) -> float:
        m, odd = divmod(i, 2)
        if odd:
            return -(a + m) * (a + b + m) * x / ((a + 2 * m) * (a + 2 * m + 1))
        return m * (b - m) * x / ((a + 2 * m - 1) * (a + 2 * m))

    acc = 1.0 + coeff(n)
    for i in range(n - 1, 0, -1):
        if acc == 0.0:
            raise ZeroDivisionError(f"partial denominator vanished below coefficient {i + 1}")
        acc = 1.0 + coeff(i) / acc
    if acc == 0.0:
        raise ZeroDivisionError("leading denominator vanished")
    if counter is not None:
        counter.add(n)
    return x**a * (1.0 - x) ** b / a / acc


def _beta_accel_lower(a: float, b: float, u: float, row: tuple[float, ...]) -> float:
    # weighted expansion integrated on [0, u]; intended for u <= 1
    total = 0.0
    g = 1.0  # (-a-b)_k / k!
    up = u**a  # u**(a+k)
    for k, c in enumerate(row):
        total += c * g * up / (k + a)
        g *= -(a + b + k) / (k + 1)
        up *= u
    return total


def _beta_accel_upper(a: float, b: float, u: float, row: tuple[float, ...]) -> float:
    # split at 1: the closed [0, 1] part is the lower expansion at u = 1
    # (same code path, so the u = 1 seam is exact), plus the remainder mapped
    # back into [1/u, 1]; finite at u = +inf where the inverse powers drop out
    total = _beta_accel_lower(a, b, 1.0, row)
    g = 1.0
    iv = u**-b  # u**-(b+k)
    for k, c in enumerate(row):
        total += c * g * (1.0 - iv) / (k + b)
        g *= -(a + b + k) / (k + 1)
        iv /= u
    return total


def beta_accelerated(
    p: BetaParams, j: int, table: CoefficientTable, *, counter: TermCounter | None = None
) -> float:
    """Weighted 2j+1-term evaluation of the beta integral, usable on all of
    [0, 1]; switches expansions at u = x/(1-x) = 1, i.e. at x = 1/2."""
    row = table.float_row(j)
    u = p.u
    if u <= 1.0:
        value = _beta_accel_lower(p.a, p.b, u, row)
    else:
        value = _beta_accel_upper(p.a, p.b, u, row)
    if counter is not None:
        counter.add(2 * j + 1)
    return value


_HALF_PI = math.pi / 2.0
_LOG_HALF_PI = math.log(_HALF_PI)
_LOG_2 = math.log(2.0)
_G_MAX = 9.0  # hard cap on the node parameter; tails are scanned outward anyway
_DEEP_TAIL = 300.0  # beyond this |s| the weight must be assembled in log space
_TAIL_EPS = 1e-22  # per-node contribution considered negligible


def beta_quadrature_oracle(
    p: BetaParams, tol: float = 1e-12, *, max_level: int = 12
) -> float:
    """Reference value of the beta integral by doubling tanh-sinh quadrature.

    The double-exponential substitution absorbs the integrable endpoint
    singularities (a < 1 at t = 0, b < 1 at t = x = 1); endpoint distances
    come from stable complements rather than subtraction, and deep-tail nodes
    are assembled in log space so nothing overflows before it underflows.
    Refinement stops once successive estimates agree within tol * (1 + |I|),
    an absolute-plus-relative criterion; OracleError signals that max_level
    halvings were not enough.
    """
    if not 1e-14 <= tol <= 1e-6:
        raise ValueError("tol must lie in [1e-14, 1e-6]")
    a, b, x = p.a, p.b, p.x
    if x == 0.0:
        return 0.0

    def contribution(g: float) -> float:
        s = _HALF_PI * math.sinh(g)
        sa = abs(s)
        if sa <= _DEEP_TAIL:
            e = math.exp(-2.0 * sa)
            near = 2.0 * e / (1.0 + e)  # 1 - |tanh(s)|
            far = 2.0 - near  # 1 + |tanh(s)|
            plus, minus = (far, near) if s >= 0 else (near, far)
            t = 0.5 * x * plus
            one_minus_t = (1.0 - x) + 0.5 * x * minus
            if t <= 0.0 or one_minus_t <= 0.0:
                return 0.0
            w = _HALF_PI * math.cosh(g) / math.cosh(s) ** 2
            return w * t ** (a - 1.0) * one_minus_t ** (b - 1.0)
        # collapsed-complement regime: 1 -/+ tanh(s) ~ 2 exp(-2|s|)
        log_near = _LOG_2 - 2.0 * sa
        if s >= 0:
            log_t = math.log(x)
            if x == 1.0:
                log_omt = log_near - _LOG_2
            else:
                log_omt = math.log(1.0 - x)
        else:
            log_t = math.log(0.5 * x) + log_near
            log_omt = 0.0  # 1 - t with t exponentially small
        log_w = _LOG_HALF_PI + math.log(math.cosh(g)) - 2.0 * (sa - _LOG_2)
        return math.exp(log_w + (a - 1.0) * log_t + (b - 1.0) * log_omt)

    def side_sum(h: float, first: int, step: int, sign: int, hint: float) -> float:
        # contributions are nonnegative and eventually decay double
        # exponentially, so stop after two consecutive negligible nodes
        total = 0.0
        quiet = 0
        k = first
        while k * h <= _G_MAX:
            c = contribution(sign * k * h)
            total += c
            if c <= _TAIL_EPS * (1.0 + hint + total):
                quiet += 1
                if quiet >= 2:
                    break
            else:
                quiet = 0
            k += step
        return total

    h = 1.0
    total = contribution(0.0)
    total += side_sum(h, 1, 1, 1, total) + side_sum(h, 1, 1, -1, total)
    previous = 0.5 * x * h * total
    for level in range(1, max_level + 1):
        h *= 0.5
        total += side_sum(h, 1, 2, 1, total) + side_sum(h, 1, 2, -1, total)
        estimate = 0.5 * x * h * total
        if level >= 2 and abs(estimate - previous) <= tol * (1.0 + abs(estimate)):
            return estimate
        previous = estimate
    raise OracleError(
        f"tanh-sinh failed to reach tol={tol:g} within {max_level} refinements"
    )
