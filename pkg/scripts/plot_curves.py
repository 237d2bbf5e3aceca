"""Render the standard comparison figures straight from the library.

Writes three PNGs: truncation-error curves for r=-1, the five-term log
comparison, and the seven-term incomplete-beta error comparison.  Purely a
convenience for eyeballing results; nothing in the test suite depends on it.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from binacc import (
    BetaParams,
    accelerated_sum,
    beta_accelerated,
    beta_binomial_expansion,
    beta_continued_fraction,
    beta_quadrature_oracle,
    build_coefficient_table,
    ln1p_accelerated,
    ln1p_taylor,
    partial_sum_level0,
)


def plot_truncation_errors(plt, outdir: Path, r: float) -> None:
    table = build_coefficient_table(12)
    fig, ax = plt.subplots(figsize=(7, 5))
    for q, style in ((0.1, "o"), (0.5, "s"), (0.9, "^"), (1.0, "v")):
        ref = (1.0 + q) ** r
        plain = [abs(partial_sum_level0(q, r, n) - ref) / ref for n in range(41)]
        accel = [
            accelerated_sum(q, r, j, table).relative_truncation_error for j in range(13)
        ]
        (line,) = ax.semilogy(range(41), plain, ":", label=f"plain, q={q}")
        ax.semilogy(
            range(13), accel, style + "-", color=line.get_color(),
            label=f"accelerated, q={q}", markersize=4,
        )
    ax.set_xlabel("index (n for plain, j for accelerated)")
    ax.set_ylabel("relative truncation error")
    ax.set_title(f"(1+q)^r truncation error, r = {r:g}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(outdir / "truncation_errors.png", dpi=150)


def plot_ln(plt, outdir: Path) -> None:
    table = build_coefficient_table(2)
    qs = [i * 0.05 for i in range(41)]
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(qs, [math.log1p(q) for q in qs], "k-", label="log(1+q)")
    ax.plot(qs, [ln1p_taylor(q, 4) for q in qs], "--", label="plain, 5 terms")
    ax.plot(qs, [ln1p_accelerated(q, 2, table) for q in qs], "-.",
            label="accelerated, 5 terms")
    ax.set_xlabel("q")
    ax.set_ylim(-0.25, 1.5)
    ax.set_title("log(1+q) with matched five-term budgets")
    ax.legend()
    fig.tight_layout()
    fig.savefig(outdir / "ln_budget5.png", dpi=150)


def plot_beta(plt, outdir: Path) -> None:
    a, b = math.sqrt(0.5), 1.0 / math.sqrt(3.0)
    table = build_coefficient_table(3)
    xs = [i / 100.0 for i in range(1, 100)]
    errs: dict[str, list[float]] = {"binomial": [], "continued fraction": [], "accelerated": []}
    for x in xs:
        p = BetaParams(a, b, x)
        oracle = beta_quadrature_oracle(p, 1e-12)
        errs["binomial"].append(abs(beta_binomial_expansion(p, 6) - oracle) / oracle)
        errs["continued fraction"].append(
            abs(beta_continued_fraction(p, 7) - oracle) / oracle
        )
        errs["accelerated"].append(abs(beta_accelerated(p, 3, table) - oracle) / oracle)
    fig, ax = plt.subplots(figsize=(7, 5))
    for label, curve in errs.items():
        ax.semilogy(xs, curve, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("relative error vs quadrature")
    ax.set_title(f"incomplete beta, a={a:.4f}, b={b:.4f}, seven-term budgets")
    ax.legend()
    fig.tight_layout()
    fig.savefig(outdir / "beta_7terms.png", dpi=150)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figures", help="output directory")
    parser.add_argument("--r", type=float, default=-1.0, help="exponent for the error plot")
    args = parser.parse_args(argv)
    try:
        import matplotlib
    except ImportError:
        print("matplotlib is not installed; pip install -e '.[plot]'", file=sys.stderr)
        return 1
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    plot_truncation_errors(plt, outdir, args.r)
    plot_ln(plt, outdir)
    plot_beta(plt, outdir)
    print(f"wrote 3 figures to {outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
