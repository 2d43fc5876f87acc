from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import pytest

import sievelab.rosser as rosser
from sievelab.buchstab import evaluate
from sievelab.errors import CapacityError, InputError
from sievelab.legendre import problem_W
from sievelab.problem import make_problem, sift_exact
from sievelab.rosser import (
    chain_member,
    combinatorial_bounds,
    fundamental_lemma_report,
    sandwich_values,
    truncated_mobius_sum,
    truncated_mu,
)


def test_frozen_small_sums(tables_small):
    p = make_problem("interval", {"x": 0, "y": 1000}, tables_small)
    assert truncated_mobius_sum(p, 100, 6, 1) == Fraction(1, 3)
    assert truncated_mobius_sum(p, 100, 6, -1) == Fraction(7, 30)
    assert truncated_mobius_sum(p, 100, 5, 1) == Fraction(1, 3)


def test_membership_examples(tables_small):
    assert chain_member([], 100, 1) and chain_member([], 100, -1)
    assert chain_member([2, 3], 100, 1) and chain_member([2, 3], 100, -1)
    # 5^3 = 125 blocks the first checked position upstairs but not down
    assert not chain_member([5], 100, 1)
    assert chain_member([5], 100, -1)
    # 5 * 3^3 = 135 blocks position two of the lower support
    assert not chain_member([3, 5], 100, -1)
    assert not chain_member([3, 5], 100, 1)  # 5^3 already too big
    assert truncated_mu(10, 100, -1, tables_small) == 1
    assert truncated_mu(15, 100, -1, tables_small) == 0
    assert truncated_mu(12, 100, 1, tables_small) == 0  # not squarefree
    assert truncated_mu(1, 100, 1, tables_small) == 1
    with pytest.raises(InputError):
        chain_member([2], 100, 0)
    with pytest.raises(InputError):
        truncated_mu(0, 100, 1, tables_small)


def _oracle_support(primes: list[int], y: float, sign: int) -> dict[int, int]:
    """Exhaustive squarefree enumeration with an independent chain check."""
    out = {1: 1}
    want_odd = sign == 1
    for r in range(1, len(primes) + 1):
        for combo in combinations(sorted(primes, reverse=True), r):
            ok = True
            prefix = 1
            for i, q in enumerate(combo):
                checked = ((i + 1) % 2 == 1) if want_odd else ((i + 1) % 2 == 0)
                if checked and prefix * q**3 >= y:
                    ok = False
                    break
                prefix *= q
            if ok:
                d = math.prod(combo)
                out[d] = -1 if r % 2 else 1
    return out


@pytest.mark.parametrize("y", [100.0, 1000.0])
@pytest.mark.parametrize("sign", [1, -1])
def test_pruned_walk_matches_exhaustive(tables_small, y, sign):
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    oracle = _oracle_support(primes, y, sign)
    walked = dict(
        (d, -1 if len(f) % 2 else 1)
        for d, f in rosser._iter_support(primes[::-1], y, sign)
    )
    assert walked == oracle
    p = make_problem("interval", {"x": 0, "y": 1000}, tables_small)
    expect = sum(Fraction(mu, d) for d, mu in oracle.items())
    assert truncated_mobius_sum(p, y, 30, sign, exact=True) == expect


def test_divisor_sums_bracket_unit_indicator(tables_small):
    mob = tables_small.mobius_table()
    for m in range(1, 2000):
        if mob[m] == 0:
            continue
        for y in (100.0, 1000.0):
            lo, mid, hi = sandwich_values(m, y, tables_small)
            assert lo <= mid <= hi, (m, y)
    assert sandwich_values(1, 100.0, tables_small) == (1, 1, 1)


def test_two_sided_bounds_trap_exact(tables_mid, grid):
    configs = [
        (make_problem("interval", {"x": 0, "y": 100_000}, tables_mid), 10_000.0, 50.0),
        (make_problem("interval", {"x": 5000, "y": 60_000}, tables_mid), 1000.0, 20.0),
        (make_problem("arithmetic_progression", {"x": 100_000, "k": 7, "l": 3}, tables_mid), 5000.0, 30.0),
        (make_problem("goldbach_product", {"two_N": 10_000}, tables_mid), 2000.0, 25.0),
        (make_problem("square_plus_one", {"x": 20_000}, tables_mid), 1000.0, 15.0),
        (make_problem("liouville_plus", {"x": 50_000}, tables_mid), 3000.0, 40.0),
    ]
    for p, y, z in configs:
        bp = combinatorial_bounds(p, y, z, grid=grid)
        exact = bp.upper.exact_count
        assert exact is not None
        assert bp.lower.lower_bound <= exact <= bp.upper.upper_bound, p.label
        assert bp.upper.s == pytest.approx(math.log(y) / math.log(z))
        assert "X*W(z)" in bp.upper.notes
        assert "F(s)" in bp.upper.notes and "f(s)" in bp.lower.notes


def test_upper_main_term_tracks_limit_curve(tables_mid, grid):
    p = make_problem("interval", {"x": 0, "y": 1000}, tables_mid)
    # the gap to the limit curve closes like a fractional power of 1/log y,
    # slow enough that 1e6 still sits ~12% out; 1e8 gets under 10%
    for y, tol in ((1e6, 0.15), (1e8, 0.10)):
        for s in (2.0, 3.0):
            z = y ** (1.0 / s)
            m = truncated_mobius_sum(p, y, z, 1, exact=False)
            w = problem_W(p, z).W
            curve = evaluate(grid, s, "F")
            assert m / w <= curve
            assert abs(m / w - curve) / curve <= tol, (y, s)
            mlo = truncated_mobius_sum(p, y, z, -1, exact=False)
            assert mlo / w >= evaluate(grid, s, "f")


def test_scaled_counts_between_limit_curves(tables_big, grid):
    p = make_problem("interval", {"x": 0, "y": 1_000_000}, tables_big)
    rows = fundamental_lemma_report(p, 10_000.0, [3.0, 4.0, 6.0, 8.0], grid)
    for row in rows:
        assert row.lower_curve - 0.05 <= row.scaled <= row.upper_curve + 0.05, row
    assert [round(r.z) for r in rows] == [22, 10, 5, 3]


def test_validation_and_capacity(tables_small, monkeypatch):
    p = make_problem("interval", {"x": 0, "y": 1000}, tables_small)
    with pytest.raises(InputError):
        combinatorial_bounds(p, 10.0, 50.0)
    with pytest.raises(InputError):
        truncated_mobius_sum(p, 1.0, 5.0, 1)
    monkeypatch.setattr(rosser, "MAX_CHAIN_NODES", 5)
    with pytest.raises(CapacityError):
        truncated_mobius_sum(p, 1000.0, 30.0, -1)
