"""Prime tables and scalar arithmetic helpers used by every sieve module.

The central object is :class:`PrimeTables`: a smallest-prime-factor table up
to a fixed limit plus the sorted array of primes below it.  Everything that
needs factorizations, prime counts in progressions, or multiplicative
statistics (mu, nu, Omega, the +-1 complete-multiplicativity indicator, phi)
goes through one shared instance so the sieve work stays O(1) per query
after a single table build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, InputError

EULER_GAMMA = 0.5772156649015329

#: Hard ceiling on table size (entries), configurable per build call.
MAX_TABLE_ENTRIES = 200_000_000


@dataclass
class PrimeTables:
    """Smallest-prime-factor table and prime list up to ``limit``.

    Attributes:
        limit: largest integer covered by the tables (inclusive).
        spf: int32 array of length limit+1; spf[n] is the smallest prime
            factor of n for n >= 2, with spf[1] == 1 and spf[0] == 0.
        primes: sorted int64 array of all primes <= limit.
    """

    limit: int
    spf: np.ndarray
    primes: np.ndarray
    _liouville: np.ndarray | None = field(default=None, repr=False)
    _big_omega: np.ndarray | None = field(default=None, repr=False)
    _mobius: np.ndarray | None = field(default=None, repr=False)

    def big_omega_table(self) -> np.ndarray:
        """int16 array with Omega(n) (prime factors with multiplicity)."""
        if self._big_omega is None:
            big = np.zeros(self.limit + 1, dtype=np.int16)
            for p in self.primes:
                q = int(p)
                while q <= self.limit:
                    big[q::q] += 1
                    q *= int(p)
            self._big_omega = big
        return self._big_omega

    def liouville_table(self) -> np.ndarray:
        """int8 array with (-1)**Omega(n); entry 0 is unused and set to 0."""
        if self._liouville is None:
            big = self.big_omega_table()
            liou = np.where(big & 1, -1, 1).astype(np.int8)
            liou[0] = 0
            self._liouville = liou
        return self._liouville

    def mobius_table(self) -> np.ndarray:
        """int8 array with mu(n); entry 0 is unused and set to 0."""
        if self._mobius is None:
            nu = np.zeros(self.limit + 1, dtype=np.int16)
            for p in self.primes:
                nu[p::p] += 1
            squarefree = np.ones(self.limit + 1, dtype=bool)
            for p in self.primes[self.primes <= math.isqrt(self.limit)]:
                sq = int(p) * int(p)
                squarefree[sq::sq] = False
            mu = np.where(squarefree, np.where(nu & 1, -1, 1), 0).astype(np.int8)
            mu[0] = 0
            self._mobius = mu
        return self._mobius


@dataclass(frozen=True)
class MultStats:
    """Multiplicative statistics of a single integer."""

    mu: int
    nu: int
    big_omega: int
    liouville: int
    phi: int


def build_tables(limit: int, max_entries: int = MAX_TABLE_ENTRIES) -> PrimeTables:
    """Sieve smallest prime factors for 0..limit and collect the primes.

    Args:
        limit: inclusive upper end of the table, at least 2.
        max_entries: refuse to allocate more table entries than this.

    Raises:
        InputError: limit < 2.
        CapacityError: limit + 1 > max_entries.
    """
    if limit < 2:
        raise InputError(f"table limit must be >= 2, got {limit}")
    if limit + 1 > max_entries:
        raise CapacityError(
            f"table of {limit + 1} entries exceeds the cap of {max_entries}"
        )
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.arange(limit + 1, dtype=np.int32)
    unset = spf == 0
    spf[unset] = idx[unset]
    primes = np.nonzero(spf == idx)[0].astype(np.int64)
    primes = primes[primes >= 2]
    return PrimeTables(limit=limit, spf=spf, primes=primes)


def factorize(n: int, tables: PrimeTables) -> list[tuple[int, int]]:
    """Return the factorization of n as (prime, exponent) pairs, ascending.

    Raises:
        InputError: n < 1.
        CapacityError: n > tables.limit.
    """
    if n < 1:
        raise InputError(f"cannot factorize {n}")
    if n > tables.limit:
        raise CapacityError(f"{n} exceeds the table limit {tables.limit}")
    out: list[tuple[int, int]] = []
    spf = tables.spf
    m = n
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return out


def mult_stats(n: int, tables: PrimeTables) -> MultStats:
    """Compute (mu, nu, Omega, (-1)**Omega, phi) for one integer via the spf table.

    mult_stats(1) is (1, 0, 0, 1, 1).
    """
    fac = factorize(n, tables)
    nu = len(fac)
    big = sum(e for _, e in fac)
    mu = 0 if any(e > 1 for _, e in fac) else (-1) ** nu
    phi = 1
    for p, e in fac:
        phi *= (p - 1) * p ** (e - 1)
    return MultStats(mu=mu, nu=nu, big_omega=big, liouville=(-1) ** big, phi=phi)


def prime_pi(x: float, tables: PrimeTables) -> int:
    """Count primes <= x using the shared prime array."""
    if x > tables.limit:
        raise CapacityError(f"{x} exceeds the table limit {tables.limit}")
    return int(np.searchsorted(tables.primes, math.floor(x), side="right"))


def pi_ap(x: float, k: int, l: int, tables: PrimeTables) -> int:
    """Count primes p <= x with p congruent to l mod k.

    Args:
        x: upper end of the count (real; compared against integer primes).
        k: modulus, k >= 1.
        l: residue class; reduced mod k internally.

    Raises:
        InputError: k < 1.
        CapacityError: x > tables.limit.
    """
    if k < 1:
        raise InputError(f"modulus must be positive, got {k}")
    if x > tables.limit:
        raise CapacityError(f"{x} exceeds the table limit {tables.limit}")
    ps = tables.primes[: np.searchsorted(tables.primes, math.floor(x), side="right")]
    return int(np.count_nonzero(ps % k == l % k))


def _simpson(f, a: float, b: float) -> float:
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))


def _adaptive_simpson(f, a, b, whole, eps, depth):
    m = 0.5 * (a + b)
    left = _simpson(f, a, m)
    right = _simpson(f, m, b)
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps or depth <= 0:
        return left + right + delta / 15.0
    return _adaptive_simpson(f, a, m, left, 0.5 * eps, depth - 1) + _adaptive_simpson(
        f, m, b, right, 0.5 * eps, depth - 1
    )


def integrate_adaptive(f, a: float, b: float, rel_tol: float = 1e-10) -> float:
    """Adaptive Simpson quadrature of f on [a, b] to a relative tolerance.

    Each interval is split until two successive refinements agree to the
    (proportionally shared) tolerance; the Richardson-extrapolated value is
    returned.
    """
    if b <= a:
        return 0.0
    whole = _simpson(f, a, b)
    scale = max(abs(whole), 1e-30)
    return _adaptive_simpson(f, a, b, whole, rel_tol * scale, 48)


def li_eval(x: float) -> float:
    """Logarithmic integral from 2 to x of dt/log t.

    Raises:
        InputError: x < 2.
    """
    if x < 2:
        raise InputError(f"li_eval needs x >= 2, got {x}")
    if x == 2:
        return 0.0
    return integrate_adaptive(lambda t: 1.0 / math.log(t), 2.0, float(x))
