from __future__ import annotations

from fractions import Fraction

import pytest

from binacc import (
    MAX_LEVEL,
    build_coefficient_table,
    coefficient_as_float,
    definitional_coefficient_oracle,
)

# hand-checked weight rows for the first three levels
KNOWN_ROWS = {
    1: (Fraction(1), Fraction(3, 4), Fraction(1, 4)),
    2: (
        Fraction(1),
        Fraction(15, 16),
        Fraction(11, 16),
        Fraction(5, 16),
        Fraction(1, 16),
    ),
    3: (
        Fraction(1),
        Fraction(63, 64),
        Fraction(57, 64),
        Fraction(42, 64),
        Fraction(22, 64),
        Fraction(7, 64),
        Fraction(1, 64),
    ),
}


def test_level_zero_row_is_single_one(table):
    assert table.row(0) == (Fraction(1),)


@pytest.mark.parametrize("j", sorted(KNOWN_ROWS))
def test_known_rows(table, j):
    assert table.row(j) == KNOWN_ROWS[j]


@pytest.mark.parametrize("j", range(11))
def test_rows_match_definitional_oracle(table, j):
    # production recursion vs symbolic expansion of the averaged partial
    # sums: two independent routes, exact equality required
    assert table.row(j) == definitional_coefficient_oracle(j)


@pytest.mark.parametrize("j", range(13))
def test_row_shape_and_ordering(table, j):
    row = table.row(j)
    assert len(row) == 2 * j + 1
    assert row[0] == 1
    assert row[-1] == Fraction(1, 4**j)
    for left, right in zip(row, row[1:]):
        assert left >= right
    for c in row:
        assert 0 < c <= 1
        assert (4**j) % c.denominator == 0


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (Fraction(3, 4), 0.75),
        (Fraction(1, 4), 0.25),
        (Fraction(11, 16), 0.6875),
        (Fraction(1), 1.0),
    ],
)
def test_coefficient_as_float(value, expected):
    assert coefficient_as_float(value) == expected


def test_float_rows_mirror_exact_rows(table):
    for j in (0, 1, 5, 12):
        assert table.float_row(j) == tuple(float(c) for c in table.row(j))


def test_table_reports_its_depth(table):
    assert table.max_level == 20
    assert len(table) == 21


def test_row_beyond_depth_rejected(table):
    with pytest.raises(ValueError):
        table.row(table.max_level + 1)
    with pytest.raises(ValueError):
        table.row(-1)


def test_depth_limits_enforced():
    with pytest.raises(ValueError):
        build_coefficient_table(-1)
    with pytest.raises(ValueError):
        build_coefficient_table(MAX_LEVEL + 1)
    # the cap itself is allowed
    assert build_coefficient_table(MAX_LEVEL).max_level == MAX_LEVEL


def test_construction_is_deterministic():
    first = build_coefficient_table(8)
    second = build_coefficient_table(8)
    for j in range(9):
        assert first.row(j) == second.row(j)


def test_oracle_validates_level():
    with pytest.raises(ValueError):
        definitional_coefficient_oracle(-1)
