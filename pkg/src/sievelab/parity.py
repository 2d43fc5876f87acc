"""Extremal sign sequences for the two-sided limits of linear sieving.

Splitting the integers by the sign of the completely multiplicative
function lambda(n) = (-1)^Omega(n) produces two sequences whose sifting
counts hug the linear-sieve limit curves: the minus-signed integers sift
down to almost nothing below s = 2 while the plus-signed ones keep a full
prime count alive through s = 3.  Everything here is counted exactly from
the factor tables; the curve predictions come from a BuchstabGrid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import EULER_GAMMA, PrimeTables
from .buchstab import BuchstabGrid, evaluate
from .errors import InputError

__all__ = [
    "ParityRow",
    "L_summatory",
    "root_ceiling",
    "rough_signed_count",
    "S_pm_exact",
    "recursion_check",
    "prediction_row",
]


@dataclass(frozen=True)
class ParityRow:
    """Exact extremal counts next to their limit-curve predictions."""

    x: int
    s: float
    exact_plus: int
    exact_minus: int
    predict_plus: float
    predict_minus: float


def _check_range(x: int, tables: PrimeTables) -> None:
    if x < 1:
        raise InputError(f"need x >= 1, got {x}")
    if x > tables.limit:
        raise InputError(f"x={x} exceeds table limit {tables.limit}")


def L_summatory(x: int, tables: PrimeTables) -> int:
    """Exact partial sum of lambda(n) for n <= x."""
    _check_range(x, tables)
    liou = tables.liouville_table()
    return int(liou[1 : x + 1].sum())


def root_ceiling(x: int, s: float) -> int:
    """Smallest integer t with t**s >= x, i.e. the ceiling of x^(1/s).

    Integer exponents are settled in exact integer arithmetic so perfect
    powers land on the boundary instead of drifting across it; fractional
    exponents get a float estimate with a small snap.
    """
    if x < 1:
        raise InputError(f"need x >= 1, got {x}")
    if s <= 0:
        raise InputError(f"need s > 0, got {s}")
    t = max(1, math.ceil(x ** (1.0 / s) - 1e-9))
    if float(s).is_integer():
        e = int(round(s))
        while t > 1 and (t - 1) ** e >= x:
            t -= 1
        while t**e < x:
            t += 1
    return t


def rough_signed_count(limit: int, p_min: int, sign: int, tables: PrimeTables) -> int:
    """Count m <= limit with smallest prime factor >= p_min and fixed sign.

    sign +1 selects lambda(m) = -1, sign -1 selects lambda(m) = +1.  The
    unit m = 1 has an empty factorization, so it passes any p_min and
    carries lambda = +1.
    """
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign}")
    if limit < 1:
        return 0
    _check_range(limit, tables)
    base = 1 if sign == -1 else 0
    if limit == 1:
        return base
    spf = tables.spf[2 : limit + 1]
    liou = tables.liouville_table()[2 : limit + 1]
    want = -1 if sign == 1 else 1
    return base + int(np.count_nonzero((spf >= p_min) & (liou == want)))


def S_pm_exact(x: int, s: float, sign: int, tables: PrimeTables) -> int:
    """Exact sifted count of the signed sequence down to z = x^(1/s)."""
    _check_range(x, tables)
    if s < 1:
        raise InputError(f"need s >= 1, got {s}")
    return rough_signed_count(x, root_ceiling(x, s), sign, tables)


def recursion_check(x: int, s: float, sign: int, tables: PrimeTables) -> tuple[int, int]:
    """Both sides of the exact pull-out-the-smallest-prime identity.

    Every counted n > 1 factors as n = p * m with p its smallest prime
    factor, so the count equals a sum over p in [x^(1/s), x] of opposite-
    sign counts at limit x // p with floor p, plus 1 on the minus side for
    the unit.  Returns (lhs, rhs); they must be equal.
    """
    lhs = S_pm_exact(x, s, sign, tables)
    t = root_ceiling(x, s)
    ps = tables.primes
    ps = ps[(ps >= t) & (ps <= x)]
    total = 1 if sign == -1 else 0
    for p in ps:
        p = int(p)
        total += rough_signed_count(x // p, p, -sign, tables)
    return lhs, total


def prediction_row(
    x: int, s: float, grid: BuchstabGrid, tables: PrimeTables
) -> ParityRow:
    """Exact extremal counts with their first-order predictions.

    The predictions scale the limit curves by (x/2) / (e^gamma log x^(1/s)),
    the density-times-Mertens factor of a half-density sequence sifted to
    z = x^(1/s).
    """
    _check_range(x, tables)
    if not 1 < s <= grid.s_max:
        raise InputError(f"need 1 < s <= {grid.s_max}, got {s}")
    scale = (x / 2.0) / (math.exp(EULER_GAMMA) * math.log(x) / s)
    return ParityRow(
        x=x,
        s=float(s),
        exact_plus=S_pm_exact(x, s, 1, tables),
        exact_minus=S_pm_exact(x, s, -1, tables),
        predict_plus=scale * evaluate(grid, s, "F"),
        predict_minus=scale * evaluate(grid, s, "f"),
    )
