"""Acceleration of slowly converging negative-power binomial series.

The core idea: repeatedly replace each partial sum by the average of itself
(weight 1/2) and its two neighbours (weight 1/4 each).  The first element of
the j-th averaged level is a weighted sum of just the first 2j+1 series
terms, and converges dramatically faster than plain truncation for ratios q
near 1, including cases where the plain series diverges.  The same weights
apply term by term to integrated expansions, which gives fixed-budget
evaluators for log(1+q) and the incomplete beta integral.
"""

from .coeff import (
    MAX_LEVEL,
    CoefficientTable,
    build_coefficient_table,
    coefficient_as_float,
    definitional_coefficient_oracle,
)
from .series import (
    BinomialInput,
    EvalResult,
    PartialSumGrid,
    accelerated_sum,
    accelerated_sum_exact,
    binomial_power,
    build_exact_grid,
    build_grid,
    falling_factorial,
    partial_sum_level0,
    relative_truncation_error,
    term,
    terms,
)
from .special import (
    BetaParams,
    CFDepth,
    OracleError,
    TermCounter,
    beta_accelerated,
    beta_binomial_expansion,
    beta_continued_fraction,
    beta_quadrature_oracle,
    ln1p_accelerated,
    ln1p_taylor,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_LEVEL",
    "BetaParams",
    "BinomialInput",
    "CFDepth",
    "CoefficientTable",
    "EvalResult",
    "OracleError",
    "PartialSumGrid",
    "TermCounter",
    "accelerated_sum",
    "accelerated_sum_exact",
    "beta_accelerated",
    "beta_binomial_expansion",
    "beta_continued_fraction",
    "beta_quadrature_oracle",
    "binomial_power",
    "build_coefficient_table",
    "build_exact_grid",
    "build_grid",
    "coefficient_as_float",
    "definitional_coefficient_oracle",
    "falling_factorial",
    "ln1p_accelerated",
    "ln1p_taylor",
    "partial_sum_level0",
    "relative_truncation_error",
    "term",
    "terms",
]
