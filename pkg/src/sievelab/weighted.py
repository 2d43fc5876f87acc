"""Logarithmically weighted sieve for almost-prime production.

Attach to each member n of a sifted sequence the weight 1 - sum of w_p
over its prime factors in a window [N^alpha, N^beta).  With the weights

    w_p = beta / ((r+1) beta - 1) * (1 - log p / (beta log N))

any n <= N carrying r+1 or more prime factors (with multiplicity, and no
repeat inside the window) gets weight <= 0, so a positive weighted total
forces members with at most r factors to exist.  The admissibility of a
level gamma_level rests on an integral condition against the limit curve
F, with a closed logarithmic form on part of the parameter range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import EULER_GAMMA, PrimeTables, integrate_adaptive
from .buchstab import BuchstabGrid, evaluate
from .errors import CapacityError, InputError
from .problem import SieveProblem, sifted_members
from .selberg import twin_constant

__all__ = [
    "WeightedConfig",
    "richert_weight",
    "lambda_r",
    "level_condition",
    "member_weight_term",
    "W_exact",
    "pr_count",
    "repeated_window_factor_count",
    "ChenReport",
    "chen_report",
]


@dataclass(frozen=True)
class WeightedConfig:
    """Parameter bundle for one weighted-sieve run.

    gamma_level is the level-of-distribution exponent; it is a different
    animal from Euler's constant, which only ever appears as euler_gamma.
    """

    N: int
    r: int
    alpha: float
    beta: float
    gamma_level: float

    def __post_init__(self):
        if self.N < 2:
            raise InputError(f"need N >= 2, got {self.N}")
        if self.r < 1:
            raise InputError(f"need r >= 1, got {self.r}")
        if not 0 < self.alpha < self.beta:
            raise InputError(
                f"need 0 < alpha < beta, got alpha={self.alpha} beta={self.beta}"
            )
        if (self.r + 1) * self.beta - 1 <= 0:
            raise InputError(
                f"need (r+1)*beta > 1, got r={self.r} beta={self.beta}"
            )
        if self.gamma_level <= 0:
            raise InputError(f"need gamma_level > 0, got {self.gamma_level}")


def richert_weight(p: int, cfg: WeightedConfig) -> float:
    """The logarithmic weight w_p; zero at the top of the window.

    Raises:
        InputError: p above N^beta (the weight would go negative).
    """
    log_ratio = math.log(p) / (cfg.beta * math.log(cfg.N))
    if log_ratio > 1 + 1e-12:
        raise InputError(f"p={p} lies above N^beta = {cfg.N**cfg.beta:.6g}")
    w = cfg.beta / ((cfg.r + 1) * cfg.beta - 1) * (1.0 - log_ratio)
    return max(0.0, w)


def lambda_r(r: int) -> float:
    """Threshold exponent reciprocal for order-r almost primes."""
    if r < 1:
        raise InputError(f"need r >= 1, got {r}")
    return r + 1 - math.log(4.0 / (1.0 + 3.0 ** (-r))) / math.log(3.0)


def level_condition(
    cfg: WeightedConfig, grid: BuchstabGrid
) -> tuple[float, float | None]:
    """Margins of the admissibility condition on gamma_level.

    Returns (margin_integral, margin_closed).  The integral margin is

        f(gamma/alpha) - c * integral over [alpha, beta] of
            (1/v - 1/beta) F((gamma - v)/alpha) dv,

    with c = beta/((r+1)beta - 1); a positive value means the level is
    admissible.  When gamma/4 <= alpha <= gamma/2 and beta < gamma the
    same condition collapses to logarithms; the closed margin is returned
    scaled by 2 e^euler_gamma alpha/gamma so the two numbers are directly
    comparable, and is None outside that range.
    """
    a, b, g = cfg.alpha, cfg.beta, cfg.gamma_level
    if g / a > grid.s_max or (g - a) / a > grid.s_max:
        raise InputError("gamma_level/alpha exceeds the grid range")
    if g <= b:
        raise InputError(f"need beta < gamma_level, got beta={b} gamma={g}")
    c = b / ((cfg.r + 1) * b - 1)
    lhs = evaluate(grid, g / a, "f")
    integral = integrate_adaptive(
        lambda v: (1.0 / v - 1.0 / b) * evaluate(grid, (g - v) / a, "F"),
        a,
        b,
        1e-8,
    )
    margin_integral = lhs - c * integral
    margin_closed = None
    if g / 4 <= a <= g / 2:
        raw = math.log(g / a - 1.0) - (
            b * math.log(b / a) - (g - b) * math.log((g - a) / (g - b))
        ) / ((cfg.r + 1) * b - 1)
        margin_closed = 2.0 * math.exp(EULER_GAMMA) * (a / g) * raw
    return margin_integral, margin_closed


def _distinct_factors(n: int, tables: PrimeTables) -> list[tuple[int, int]]:
    if n > tables.limit:
        raise CapacityError(f"member {n} exceeds table limit {tables.limit}")
    out = []
    m = n
    spf = tables.spf
    while m > 1:
        q = int(spf[m])
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        out.append((q, e))
    return out


def member_weight_term(n: int, cfg: WeightedConfig, tables: PrimeTables) -> float:
    """1 minus the window weight sum of one member; may be negative."""
    lo = cfg.alpha * math.log(cfg.N)
    hi = cfg.beta * math.log(cfg.N)
    total = 0.0
    for q, _ in _distinct_factors(n, tables):
        lq = math.log(q)
        if lo <= lq < hi:
            total += richert_weight(q, cfg)
    return 1.0 - total


def W_exact(
    p: SieveProblem, cfg: WeightedConfig, tables: PrimeTables | None = None
) -> float:
    """Exact weighted count over the survivors of the pre-sieve at N^alpha."""
    tables = tables or p.tables
    z = cfg.N**cfg.alpha
    terms = [
        member_weight_term(int(n), cfg, tables) for n in sifted_members(p, z)
    ]
    return math.fsum(terms)


def pr_count(p: SieveProblem, r: int, alpha: float, N: int | None = None) -> int:
    """Survivors of the pre-sieve carrying at most r prime factors.

    Factors are counted with multiplicity; the unit has none.  N defaults
    to the problem's own size bound.
    """
    if r < 0:
        raise InputError(f"need r >= 0, got {r}")
    scale = N if N is not None else p.n_bound
    z = scale**alpha
    surv = sifted_members(p, z)
    if surv.size == 0:
        return 0
    if int(surv.max()) > p.tables.limit:
        raise CapacityError("members exceed the factor tables")
    big = p.tables.big_omega_table()
    return int(np.count_nonzero(big[surv] <= r))


def repeated_window_factor_count(
    p: SieveProblem, cfg: WeightedConfig, tables: PrimeTables | None = None
) -> int:
    """Survivors divisible by p^2 for some window prime p in [N^a, N^b)."""
    tables = tables or p.tables
    z = cfg.N**cfg.alpha
    lo = cfg.alpha * math.log(cfg.N)
    hi = cfg.beta * math.log(cfg.N)
    count = 0
    for n in sifted_members(p, z):
        for q, e in _distinct_factors(int(n), tables):
            if e >= 2 and lo <= math.log(q) < hi:
                count += 1
                break
    return count


@dataclass(frozen=True)
class ChenReport:
    """Prime-plus-almost-prime decomposition tally for one even N."""

    N: int
    count: int
    reference: float
    ratio: float
    triple_count: int


def chen_report(N: int, tables: PrimeTables) -> ChenReport:
    """Count decompositions N = p + m with p prime and m having <= 2 factors.

    The reference value is 0.335 * C2 * prod over odd p | N of (p-1)/(p-2)
    times N/(log N)^2, the classical lower-bound shape; the ratio
    count/reference is reported, not asserted, since the underlying result
    is asymptotic.  triple_count tallies the m = p1 p2 p3 shape with
    p1 < N^(1/3) <= p2 <= p3 that the deeper arguments have to control.
    """
    if N % 2 or N < 6:
        raise InputError(f"need even N >= 6, got {N}")
    if N > tables.limit:
        raise CapacityError(f"N={N} exceeds table limit {tables.limit}")
    ps = tables.primes
    ps = ps[(ps >= 3) & (ps <= N - 3)]
    m = N - ps
    big = tables.big_omega_table()
    count = int(np.count_nonzero(big[m] <= 2))

    singular = 1.0
    for q, _ in _distinct_factors(N, tables):
        if q > 2:
            singular *= (q - 1) / (q - 2)
    reference = 0.335 * twin_constant() * singular * N / math.log(N) ** 2

    cut = N ** (1.0 / 3.0)
    triple = 0
    for n in m[big[m] == 3]:
        fac = []
        for q, e in _distinct_factors(int(n), tables):
            fac.extend([q] * e)
        fac.sort()
        if fac[0] < cut <= fac[1]:
            triple += 1
    return ChenReport(
        N=N, count=count, reference=reference, ratio=count / reference,
        triple_count=triple,
    )
