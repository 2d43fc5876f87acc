"""Combinatorial sieve built from cubic-truncation support chains.

The classical trick for turning inclusion-exclusion into a one-sided bound
is to keep only part of the Moebius support.  Write a squarefree modulus as
d = p1 p2 ... pr with p1 > p2 > ... > pr.  The upper-bound support keeps d
when every odd position l satisfies

    p1 p2 ... p_{l-1} * p_l^3 < y,

and the lower-bound support checks the even positions instead.  The empty
product d = 1 belongs to both.  Summing mu(d) #A_d over either support
bounds the sifted count from one side, and the main terms, normalized by
the Mertens product W(z), track the linear-sieve limit curves F and f at
s = log y / log z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .buchstab import BuchstabGrid, evaluate
from .errors import CapacityError, InputError
from .legendre import problem_W
from .problem import SieveProblem, _factor_squarefree, remainder, sift_exact
from .selberg import SieveReport, _relevant_primes

#: hard ceiling on the number of support elements enumerated per call
MAX_CHAIN_NODES = 2_000_000


def chain_member(factors: Sequence[int], y: float, sign: int) -> bool:
    """Membership test for the truncated Moebius support.

    ``factors`` are the distinct prime factors of d, any order; ``sign``
    +1 selects the upper-bound support (odd positions checked), -1 the
    lower-bound one (even positions).  d = 1 (no factors) is a member of
    both supports.
    """
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign}")
    ps = sorted(factors, reverse=True)
    want_odd = sign == 1
    prefix = 1
    for i, p in enumerate(ps):
        if ((i + 1) % 2 == 1) == want_odd and prefix * p * p * p >= y:
            return False
        prefix *= p
    return True


def truncated_mu(d: int, y: float, sign: int, tables) -> int:
    """mu(d) when d sits in the chosen truncated support, else 0.

    Non-squarefree d gives 0 like mu itself does.
    """
    if d < 1:
        raise InputError(f"need d >= 1, got {d}")
    try:
        facs = _factor_squarefree(d, tables)
    except InputError:
        return 0
    if not chain_member(facs, y, sign):
        return 0
    return -1 if len(facs) % 2 else 1


def _iter_support(
    primes_desc: Sequence[int], y: float, sign: int
) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Depth-first walk of the support, largest prime chosen first.

    Yields (d, factors) pairs including d = 1.  A branch that fails its
    position condition is dropped whole: every extension keeps the same
    failing prefix, so nothing below it can be a member.
    """
    want_odd = sign == 1
    yield 1, ()
    n = 1
    stack = [(0, 1, ())]
    while stack:
        idx, prod, facs = stack.pop()
        pos_checked = ((len(facs) + 1) % 2 == 1) == want_odd
        for j in range(idx, len(primes_desc)):
            p = primes_desc[j]
            if pos_checked and prod * p * p * p >= y:
                continue
            nd = prod * p
            n += 1
            if n > MAX_CHAIN_NODES:
                raise CapacityError(
                    f"truncated support exceeds {MAX_CHAIN_NODES} elements"
                )
            nf = facs + (p,)
            yield nd, nf
            stack.append((j + 1, nd, nf))


def truncated_mobius_sum(
    p: SieveProblem, y: float, z: float, sign: int, exact: bool | None = None
) -> Fraction | float:
    """Main-term density sum over the truncated support.

    Computes the sum of mu(d) w(d) / d over support members built from the
    problem's sieve primes below z.  Exact rational arithmetic is the
    default while few primes are in play; pass ``exact`` to force either
    path.
    """
    if y <= 1:
        raise InputError(f"need y > 1, got {y}")
    primes = _relevant_primes(z, p.omega, p.prime_set, p.tables)
    if exact is None:
        exact = len(primes) <= 30
    desc = primes[::-1]
    if exact:
        total = Fraction(0)
        for _, facs in _iter_support(desc, y, sign):
            term = Fraction(1)
            for q in facs:
                term *= Fraction(p.omega.at_prime(q), q)
            total += -term if len(facs) % 2 else term
        return total
    terms = []
    for _, facs in _iter_support(desc, y, sign):
        t = 1.0
        for q in facs:
            t *= float(p.omega.at_prime(q)) / q
        terms.append(-t if len(facs) % 2 else t)
    return math.fsum(terms)


@dataclass
class BoundPair:
    """Two-sided sieve result: S is trapped between lower and upper."""

    upper: SieveReport
    lower: SieveReport


def combinatorial_bounds(
    p: SieveProblem,
    y: float,
    z: float,
    grid: BuchstabGrid | None = None,
    with_exact: bool = True,
) -> BoundPair:
    """Upper and lower sieve bounds from the truncated supports.

    The bound for each side is X * M(sign) plus/minus the sum of |R_d|
    over the support; every support member automatically has d < y once
    z <= y, so the remainder stays controlled by the level.
    """
    if not 1 < z <= y:
        raise InputError(f"need 1 < z <= y, got z={z}, y={y}")
    s = math.log(y) / math.log(z)
    mv = problem_W(p, z)
    primes = _relevant_primes(z, p.omega, p.prime_set, p.tables)
    desc = primes[::-1]
    exact = sift_exact(p, z) if with_exact else None
    out = {}
    for sign in (1, -1):
        m = truncated_mobius_sum(p, y, z, sign)
        rem_terms = []
        for d, _ in _iter_support(desc, y, sign):
            if d < y:
                rem_terms.append(abs(remainder(p, d).r))
        rem = math.fsum(rem_terms)
        main = p.X * float(m)
        notes = f"X*W(z) = {p.X * mv.W:.6g}"
        if grid is not None and 0 < s <= grid.s_max:
            curve = evaluate(grid, s, "F" if sign == 1 else "f")
            notes += f"; limit-curve reference X*W*{'F' if sign == 1 else 'f'}(s) = {p.X * mv.W * curve:.6g}"
        rep = SieveReport(
            problem=p.label,
            X=p.X,
            z=float(z),
            y=float(y),
            s=s,
            main_term=main,
            remainder_bound=rem,
            exact_count=exact,
            notes=notes,
        )
        if sign == 1:
            rep.upper_bound = main + rem
            if exact and exact > 0:
                rep.ratio = rep.upper_bound / exact
        else:
            rep.lower_bound = main - rem
            if exact and exact > 0:
                rep.ratio = rep.lower_bound / exact
        out[sign] = rep
    return BoundPair(upper=out[1], lower=out[-1])


def sandwich_values(m: int, y: float, tables) -> tuple[int, int, int]:
    """Divisor sums showing the supports really bracket the unit indicator.

    For squarefree m returns (lower_sum, indicator, upper_sum) where each
    sum runs the truncated mu over all divisors of m; the defining property
    of the construction is lower_sum <= indicator <= upper_sum with
    indicator = 1 exactly when m = 1.
    """
    facs = _factor_squarefree(m, tables)
    if len(facs) > 20:
        raise CapacityError(f"{m} has {len(facs)} prime factors; cap is 20")
    lo = hi = 0
    for mask in range(1 << len(facs)):
        sub = [facs[i] for i in range(len(facs)) if mask >> i & 1]
        mu = -1 if len(sub) % 2 else 1
        if chain_member(sub, y, -1):
            lo += mu
        if chain_member(sub, y, 1):
            hi += mu
    return lo, (1 if m == 1 else 0), hi


@dataclass(frozen=True)
class FundamentalRow:
    """One (s, z) slice comparing exact sifting against the limit curves."""

    s: float
    z: float
    exact: int
    scaled: float
    lower_curve: float
    upper_curve: float


def fundamental_lemma_report(
    p: SieveProblem, y: float, s_values: Sequence[float], grid: BuchstabGrid
) -> list[FundamentalRow]:
    """Tabulate S(z) / (X W(z)) against f(s) and F(s) for z = y^(1/s).

    As s grows both curves pinch to 1 and the scaled exact count should sit
    near, and eventually between, them.
    """
    rows = []
    for s in s_values:
        if s <= 0:
            raise InputError(f"need s > 0, got {s}")
        z = y ** (1.0 / s)
        mv = problem_W(p, z)
        exact = sift_exact(p, z)
        denom = p.X * mv.W
        rows.append(
            FundamentalRow(
                s=float(s),
                z=z,
                exact=exact,
                scaled=exact / denom,
                lower_curve=evaluate(grid, float(s), "f"),
                upper_curve=evaluate(grid, float(s), "F"),
            )
        )
    return rows
