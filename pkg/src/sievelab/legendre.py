"""Inclusion-exclusion sieve counts and Mertens-type Euler products.

The inclusion-exclusion count over squarefree divisors of the product of
sieve primes below z is exact but exponential in the number of primes, so
it is capped; it serves as a second ground truth against the member scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import EULER_GAMMA, PrimeTables
from .errors import CapacityError
from .problem import MultiplicativeDensity, PrimeSet, SieveProblem, count_Ad, sieve_primes

#: switch from exact rational products to compensated floats above this z
EXACT_PRODUCT_Z = 10_000

#: refuse inclusion-exclusion over more primes than this
MAX_SUBSET_PRIMES = 25


@dataclass(frozen=True)
class MertensValue:
    """Euler products over the primes below z.

    V is the product of (1 - 1/p) over all primes p < z; W is the product of
    (1 - w(p)/p) over the sieve primes below z.  Exact rational values are
    kept when z is small enough that they stay cheap.
    """

    z: float
    V: float
    W: float
    V_exact: Fraction | None = None
    W_exact: Fraction | None = None

    def v_normalized(self) -> float:
        """V(z) log z e^gamma, which drifts to 1 as z grows."""
        return self.V * math.log(self.z) * math.exp(EULER_GAMMA)


def mertens_products(
    z: float,
    omega: MultiplicativeDensity,
    prime_set: PrimeSet,
    tables: PrimeTables,
) -> MertensValue:
    """Compute V(z) and W(z; w) from the prime table.

    Raises:
        CapacityError: z exceeds what the tables cover.
    """
    if z > tables.limit + 1:
        raise CapacityError(f"z={z} beyond table limit {tables.limit}")
    ps_all = tables.primes[tables.primes < z]
    ps_sel = prime_set.select(ps_all)
    if z <= EXACT_PRODUCT_Z:
        v_exact = Fraction(1)
        for p in ps_all:
            v_exact *= Fraction(int(p) - 1, int(p))
        w_exact = Fraction(1)
        for p in ps_sel:
            w_exact *= 1 - omega.at_prime(int(p)) / int(p)
        return MertensValue(
            z=float(z), V=float(v_exact), W=float(w_exact),
            V_exact=v_exact, W_exact=w_exact,
        )
    v = math.exp(math.fsum(math.log1p(-1.0 / int(p)) for p in ps_all))
    w_logs = []
    for p in ps_sel:
        wp = omega.at_prime(int(p))
        if wp:
            w_logs.append(math.log1p(-float(wp) / int(p)))
    return MertensValue(z=float(z), V=v, W=math.exp(math.fsum(w_logs)))


def problem_W(p: SieveProblem, z: float) -> MertensValue:
    """Mertens products for a problem's own density and prime set."""
    return mertens_products(z, p.omega, p.prime_set, p.tables)


def _subset_primes(p: SieveProblem, z: float, max_primes: int) -> list[int]:
    rp = [int(q) for q in sieve_primes(p, z)]
    if len(rp) > max_primes:
        raise CapacityError(
            f"inclusion-exclusion over {len(rp)} primes needs "
            f"2^{len(rp)} = {2 ** len(rp)} divisors; cap is {max_primes} primes"
        )
    return rp


def legendre_count(p: SieveProblem, z: float, max_primes: int = MAX_SUBSET_PRIMES) -> int:
    """Exact sifted count by inclusion-exclusion over the primes below z.

    Equals the member-scan count; subtrees whose divisor already exceeds the
    largest member (or has no multiples in A) are pruned since every deeper
    term is zero.

    Raises:
        CapacityError: more than max_primes sieve primes below z.
    """
    rp = _subset_primes(p, z, max_primes)
    total = 0
    stack: list[tuple[int, int, int]] = [(0, 1, 1)]
    while stack:
        i, d, sign = stack.pop()
        c = count_Ad(p, d)
        total += sign * c
        if c == 0:
            continue
        for j in range(i, len(rp)):
            nd = d * rp[j]
            if nd > p.n_bound:
                break
            stack.append((j + 1, nd, -sign))
    return total


def legendre_remainder_sum(
    p: SieveProblem, z: float, max_primes: int = MAX_SUBSET_PRIMES
) -> float:
    """Sum of |R_d| over every squarefree d composed of sieve primes below z.

    Together with X W(z; w) this brackets the sifted count from both sides.
    """
    from .problem import remainder

    rp = _subset_primes(p, z, max_primes)
    terms: list[float] = []
    stack: list[tuple[int, int]] = [(0, 1)]
    while stack:
        i, d = stack.pop()
        terms.append(abs(remainder(p, d).r))
        for j in range(i, len(rp)):
            stack.append((j + 1, d * rp[j]))
    return math.fsum(terms)
