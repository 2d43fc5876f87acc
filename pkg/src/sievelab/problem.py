"""Sifted-sequence definitions: members, densities, exact counts.

A sieve problem packages a finite integer sequence A, a scale X, a
multiplicative local density w with w(p)/p approximating the proportion of A
divisible by p, and the set of primes the sieve is allowed to use.  The
exact operations here (count_Ad, sift_exact) are deliberately brute force;
they are the ground truth every bound module is checked against.

Supported kinds:

=====================  ====================================================
interval               {x+1, ..., x+y}, X = y, w = 1
arithmetic_progression {n <= x : n = l mod k}, X = x/k, w(p) = 1 for p not | k
goldbach_product       {n(2N-n) : 2 <= n <= 2N-2}, X = 2N,
                       w(p) = 1 if p | 2N else 2
shifted_prime          {N-p : p prime, 3 <= p <= N-3, p not | N}, X = Li(N),
                       w(p) = p/(p-1) for p not | N
square_plus_one        {n^2+1 : n <= x}, X = x, w(2) = 1,
                       w(p) = 2 if p = 1 mod 4 else 0
liouville_plus         {n <= x with an odd number of prime factors}, X = x/2
liouville_minus        {n <= x with an even number of prime factors}, X = x/2
=====================  ====================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .arith import PrimeTables, li_eval
from .errors import CapacityError, DensityRangeError, InputError

SCAN_KINDS = (
    "goldbach_product",
    "shifted_prime",
    "square_plus_one",
    "liouville_plus",
    "liouville_minus",
)
ALL_KINDS = ("interval", "arithmetic_progression") + SCAN_KINDS


@dataclass(frozen=True)
class MultiplicativeDensity:
    """Local density w, given by its values at primes.

    ``at_prime`` enforces 0 <= w(p) < p; values are exact rationals so the
    quadratic-form sieve algebra downstream stays exact.
    """

    fn: Callable[[int], Fraction]
    description: str = ""

    def at_prime(self, p: int) -> Fraction:
        w = Fraction(self.fn(p))
        if w < 0 or w >= p:
            raise DensityRangeError(f"w({p}) = {w} outside [0, {p})")
        return w

    def at_squarefree(self, prime_factors: list[int]) -> Fraction:
        out = Fraction(1)
        for p in prime_factors:
            out *= self.at_prime(p)
        return out


@dataclass(frozen=True)
class PrimeSet:
    """Set of primes available to the sieve.

    kind "all" is every prime; "coprime" keeps primes not dividing m;
    "two_or_one_mod_four" keeps 2 and the primes = 1 mod 4.
    """

    kind: str = "all"
    m: int = 1

    def contains(self, p: int) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "coprime":
            return self.m % p != 0
        if self.kind == "two_or_one_mod_four":
            return p == 2 or p % 4 == 1
        raise InputError(f"unknown prime set kind {self.kind!r}")

    def select(self, primes: np.ndarray) -> np.ndarray:
        if self.kind == "all":
            return primes
        if self.kind == "coprime":
            return primes[self.m % primes != 0]
        if self.kind == "two_or_one_mod_four":
            return primes[(primes == 2) | (primes % 4 == 1)]
        raise InputError(f"unknown prime set kind {self.kind!r}")


@dataclass(frozen=True)
class RemainderRecord:
    """One divisor's exact count against its expected share."""

    d: int
    count: int
    main: float
    r: float


@dataclass
class SieveProblem:
    kind: str
    label: str
    params: dict
    X: float
    omega: MultiplicativeDensity
    prime_set: PrimeSet
    tables: PrimeTables
    members: np.ndarray | None = None
    n_bound: int = 0
    _prefix_plus: np.ndarray | None = field(default=None, repr=False)


def _liouville_prefix(tables: PrimeTables, x: int) -> np.ndarray:
    liou = tables.liouville_table()
    pref = np.zeros(x + 1, dtype=np.int64)
    np.cumsum(liou[1 : x + 1] == 1, out=pref[1:])
    return pref


def make_problem(kind: str, params: dict, tables: PrimeTables) -> SieveProblem:
    """Build one of the supported sieve problems.

    Raises:
        InputError: unknown kind or parameters outside the kind's domain.
        CapacityError: members would not fit in the supplied tables where
            the kind needs factorization support (liouville kinds).
    """
    if kind == "interval":
        x, y = int(params["x"]), int(params["y"])
        if x < 0 or y < 1:
            raise InputError(f"interval needs x >= 0, y >= 1, got x={x} y={y}")
        return SieveProblem(
            kind=kind,
            label=f"interval[{x + 1}..{x + y}]",
            params={"x": x, "y": y},
            X=float(y),
            omega=MultiplicativeDensity(lambda p: Fraction(1), "w = 1"),
            prime_set=PrimeSet("all"),
            tables=tables,
            n_bound=x + y,
        )

    if kind == "arithmetic_progression":
        x, k, l = int(params["x"]), int(params["k"]), int(params["l"])
        if x < 1 or k < 1:
            raise InputError(f"progression needs x >= 1, k >= 1, got x={x} k={k}")
        if math.gcd(l, k) != 1:
            raise InputError(f"residue {l} not coprime to modulus {k}")
        return SieveProblem(
            kind=kind,
            label=f"progression x={x} k={k} l={l % k}",
            params={"x": x, "k": k, "l": l % k},
            X=x / k,
            omega=MultiplicativeDensity(
                lambda p, k=k: Fraction(0) if k % p == 0 else Fraction(1),
                f"w(p) = 1 off p | {k}",
            ),
            prime_set=PrimeSet("coprime", k),
            tables=tables,
            n_bound=x,
        )

    if kind == "goldbach_product":
        two_n = int(params["two_N"])
        if two_n < 6 or two_n % 2:
            raise InputError(f"goldbach_product needs even 2N >= 6, got {two_n}")
        n = np.arange(2, two_n - 1, dtype=np.int64)
        return SieveProblem(
            kind=kind,
            label=f"goldbach 2N={two_n}",
            params={"two_N": two_n},
            X=float(two_n),
            omega=MultiplicativeDensity(
                lambda p, m=two_n: Fraction(1) if m % p == 0 else Fraction(2),
                f"w(p) = 1 if p | {two_n} else 2",
            ),
            prime_set=PrimeSet("all"),
            tables=tables,
            members=n * (two_n - n),
            n_bound=int(two_n) ** 2 // 4,
        )

    if kind == "shifted_prime":
        n_par = int(params["N"])
        if n_par < 8 or n_par % 2:
            raise InputError(f"shifted_prime needs even N >= 8, got {n_par}")
        if n_par > tables.limit:
            raise CapacityError(f"N={n_par} exceeds table limit {tables.limit}")
        ps = tables.primes
        ps = ps[(ps >= 3) & (ps <= n_par - 3)]
        ps = ps[n_par % ps != 0]
        return SieveProblem(
            kind=kind,
            label=f"shifted N={n_par}",
            params={"N": n_par},
            X=li_eval(n_par),
            omega=MultiplicativeDensity(
                lambda p, m=n_par: Fraction(0) if m % p == 0 else Fraction(p, p - 1),
                f"w(p) = p/(p-1) off p | {n_par}",
            ),
            prime_set=PrimeSet("coprime", n_par),
            tables=tables,
            members=(n_par - ps).astype(np.int64),
            n_bound=n_par - 3,
        )

    if kind == "square_plus_one":
        x = int(params["x"])
        if x < 1:
            raise InputError(f"square_plus_one needs x >= 1, got {x}")
        n = np.arange(1, x + 1, dtype=np.int64)
        return SieveProblem(
            kind=kind,
            label=f"square_plus_one x={x}",
            params={"x": x},
            X=float(x),
            omega=MultiplicativeDensity(
                lambda p: Fraction(1)
                if p == 2
                else (Fraction(2) if p % 4 == 1 else Fraction(0)),
                "w(2) = 1, w(p) = 2 for p = 1 mod 4, else 0",
            ),
            prime_set=PrimeSet("two_or_one_mod_four"),
            tables=tables,
            members=n * n + 1,
            n_bound=x * x + 1,
        )

    if kind in ("liouville_plus", "liouville_minus"):
        x = int(params["x"])
        if x < 1:
            raise InputError(f"{kind} needs x >= 1, got {x}")
        if x > tables.limit:
            raise CapacityError(f"x={x} exceeds table limit {tables.limit}")
        target = -1 if kind == "liouville_plus" else 1
        liou = tables.liouville_table()
        members = np.nonzero(liou[: x + 1] == target)[0].astype(np.int64)
        sign = "+" if kind == "liouville_plus" else "-"
        prob = SieveProblem(
            kind=kind,
            label=f"liouville{sign} x={x}",
            params={"x": x},
            X=x / 2.0,
            omega=MultiplicativeDensity(lambda p: Fraction(1), "w = 1"),
            prime_set=PrimeSet("all"),
            tables=tables,
            members=members,
            n_bound=x,
        )
        prob._prefix_plus = _liouville_prefix(tables, x)
        return prob

    raise InputError(f"unknown problem kind {kind!r}")


def members_array(p: SieveProblem) -> np.ndarray:
    """The members of A as an int64 array (generated on the fly for the
    closed-form kinds, stored for the scan kinds)."""
    if p.members is not None:
        return p.members
    if p.kind == "interval":
        x, y = p.params["x"], p.params["y"]
        return np.arange(x + 1, x + y + 1, dtype=np.int64)
    if p.kind == "arithmetic_progression":
        x, k, l = p.params["x"], p.params["k"], p.params["l"]
        first = l if l >= 1 else k
        return np.arange(first, x + 1, k, dtype=np.int64)
    raise InputError(f"no member generator for kind {p.kind!r}")


def _factor_squarefree(d: int, tables: PrimeTables) -> list[int]:
    """Prime factors of a squarefree d; InputError if d is not squarefree."""
    if d < 1:
        raise InputError(f"divisor must be >= 1, got {d}")
    out: list[int] = []
    m = d
    if m <= tables.limit:
        spf = tables.spf
        while m > 1:
            q = int(spf[m])
            m //= q
            if m % q == 0:
                raise InputError(f"{d} is not squarefree")
            out.append(q)
        return out
    for q in tables.primes:
        q = int(q)
        if q * q > m:
            break
        if m % q == 0:
            m //= q
            if m % q == 0:
                raise InputError(f"{d} is not squarefree")
            out.append(q)
    if m > 1:
        if m > tables.limit and math.isqrt(m) > tables.limit:
            raise CapacityError(f"cannot certify factor {m} with tables")
        out.append(m)
    return out


def count_Ad(p: SieveProblem, d: int) -> int:
    """Exact number of members of A divisible by d (d squarefree, d >= 1)."""
    fac = _factor_squarefree(d, p.tables)
    if p.kind == "interval":
        x, y = p.params["x"], p.params["y"]
        return (x + y) // d - x // d
    if p.kind == "arithmetic_progression":
        x, k, l = p.params["x"], p.params["k"], p.params["l"]
        if math.gcd(d, k) != 1:
            return 0
        # n = 0 mod d and n = l mod k; lift to the class c mod dk
        inv = pow(d % k, -1, k) if k > 1 else 0
        c = d * ((l * inv) % k) if k > 1 else d
        if c == 0:
            return x // (d * k)
        return (x - c) // (d * k) + 1 if c <= x else 0
    if p.kind in ("liouville_plus", "liouville_minus"):
        x = p.params["x"]
        m_top = x // d
        if m_top == 0:
            return 0
        liou_d = 1 if len(fac) % 2 == 0 else -1
        target = -1 if p.kind == "liouville_plus" else 1
        want_plus = target * liou_d == 1
        plus = int(p._prefix_plus[m_top])
        return plus if want_plus else m_top - plus
    return int(np.count_nonzero(p.members % d == 0))


def remainder(p: SieveProblem, d: int) -> RemainderRecord:
    """Exact count of A_d against its expected share X w(d)/d."""
    fac = _factor_squarefree(d, p.tables)
    count = count_Ad(p, d)
    main = float(p.X) * float(p.omega.at_squarefree(fac)) / d
    return RemainderRecord(d=d, count=count, main=main, r=count - main)


def sieve_primes(p: SieveProblem, z: float) -> np.ndarray:
    """Primes of the problem's prime set below z (strict), ascending."""
    ps = p.tables.primes
    ps = ps[ps < z]
    return p.prime_set.select(ps)


def sift_exact(p: SieveProblem, z: float) -> int:
    """Count members of A with no prime factor p < z from the prime set.

    This is the brute-force ground truth: every relevant prime below z is
    tested by divisibility against every member.
    """
    rp = sieve_primes(p, z)
    if p.kind == "interval":
        x, y = p.params["x"], p.params["y"]
        keep = np.ones(y, dtype=bool)
        for q in rp:
            q = int(q)
            start = (-(x + 1)) % q
            keep[start::q] = False
        return int(np.count_nonzero(keep))
    mem = members_array(p)
    keep = np.ones(mem.size, dtype=bool)
    for q in rp:
        np.logical_and(keep, mem % int(q) != 0, out=keep)
    return int(np.count_nonzero(keep))


def sifted_members(p: SieveProblem, z: float) -> np.ndarray:
    """The members surviving the cut at z, as values."""
    rp = sieve_primes(p, z)
    mem = members_array(p)
    keep = np.ones(mem.size, dtype=bool)
    for q in rp:
        np.logical_and(keep, mem % int(q) != 0, out=keep)
    return mem[keep]
