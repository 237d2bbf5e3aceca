"""Exact weight tables for the binomial-series averaging transform.

The transform replaces a plain truncated sum of series terms a_0..a_2j by the
weighted sum of the same terms, with weights that decay from 1 down to 4**-j.
Weights are kept as `fractions.Fraction` so table construction is reproducible
bit for bit and weight error never mixes with evaluation error; callers that
need floats take them through :func:`coefficient_as_float` exactly once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = [
    "MAX_LEVEL",
    "CoefficientTable",
    "build_coefficient_table",
    "coefficient_as_float",
    "definitional_coefficient_oracle",
]

# Hard cap on the acceleration level.  Row j carries denominators up to 4**j,
# so 64 keeps every entry within 128-bit integers; all shipped analyses use
# j <= 20.
MAX_LEVEL = 64

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


def _check_level(j: int) -> None:
    if j < 0:
        raise ValueError("level must be >= 0")
    if j > MAX_LEVEL:
        raise ValueError(f"level {j} exceeds the supported maximum {MAX_LEVEL}")


def _next_row(prev: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Advance a weight row one level with the 1/2, 1/4, 1/4 stencil.

    Averaging neighbouring partial sums shifts the window a weight row
    describes, so at the row level the stencil reads an implicit 1 left of
    position 0 (leading terms are always fully included) and 0 past the end.
    """

    def at(m: int) -> Fraction:
        if m < 0:
            return _ONE
        if m >= len(prev):
            return _ZERO
        return prev[m]

    return tuple(
        _HALF * at(k - 1) + _QUARTER * at(k - 2) + _QUARTER * at(k)
        for k in range(len(prev) + 2)
    )


def coefficient_as_float(value: Fraction) -> float:
    """Nearest binary double of an exact weight (all weights lie in (0, 1])."""
    return float(value)


class CoefficientTable:
    """Triangular weight table; row j holds the 2j+1 exact level-j weights.

    Rows are materialized at construction (construction is O(max_level**2)
    small-integer work), which keeps instances immutable and safe to share
    across threads.  There is no on-disk cache; tables are cheap to rebuild.
    """

    def __init__(self, max_level: int) -> None:
        _check_level(max_level)
        rows: list[tuple[Fraction, ...]] = [(_ONE,)]
        for _ in range(max_level):
            rows.append(_next_row(rows[-1]))
        self._rows = tuple(rows)
        self._float_rows = tuple(
            tuple(coefficient_as_float(c) for c in row) for row in rows
        )

    @property
    def max_level(self) -> int:
        return len(self._rows) - 1

    def _check_row(self, j: int) -> None:
        if not 0 <= j <= self.max_level:
            raise ValueError(f"level {j} outside table range 0..{self.max_level}")

    def row(self, j: int) -> tuple[Fraction, ...]:
        """Exact weights for level j, ordered by term index k = 0..2j."""
        self._check_row(j)
        return self._rows[j]

    def float_row(self, j: int) -> tuple[float, ...]:
        """Level-j weights rounded once to nearest binary doubles."""
        self._check_row(j)
        return self._float_rows[j]

    def __len__(self) -> int:
        return len(self._rows)


def build_coefficient_table(j_max: int) -> CoefficientTable:
    """Build the full weight table for levels 0..j_max (j_max <= MAX_LEVEL)."""
    return CoefficientTable(j_max)


def definitional_coefficient_oracle(j: int) -> tuple[Fraction, ...]:
    """Level-j weights obtained directly from the defining recursion.

    Expands every level-0 partial sum as an explicit coefficient vector over
    the term basis a_0..a_2j and applies the 1/2, 1/4, 1/4 averaging to whole
    vectors, level by level, until the single level-j vector remains.  Cubic
    time and quadratic space; independent of the row-to-row construction used
    by :class:`CoefficientTable`, and kept only as its cross-check.
    """
    _check_level(j)
    width = 2 * j + 1
    # vectors[i] is the coefficient vector of the partial sum at index
    # level + i; at level 0 the sum at index n contains a_0..a_n once each
    vectors = [
        tuple(_ONE if k <= n else _ZERO for k in range(width)) for n in range(width)
    ]
    for _level in range(j):
        vectors = [
            tuple(
                _HALF * mid[k] + _QUARTER * lo[k] + _QUARTER * hi[k]
                for k in range(width)
            )
            for lo, mid, hi in zip(vectors, vectors[1:], vectors[2:])
        ]
    return vectors[0]
