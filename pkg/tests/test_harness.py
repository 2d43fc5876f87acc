import math

import pytest

from sievelab.arith import li_eval, prime_pi
from sievelab.errors import CapacityError, InputError
from sievelab.harness import (
    ACCEPTANCE_SUITES,
    STATIC_INVARIANTS,
    SUITES,
    SuiteResult,
    bv_scan,
    coverage_problems,
    run_suite,
)


def test_coverage_registry_is_one_to_one():
    assert coverage_problems() == []
    assert len(set(STATIC_INVARIANTS)) == len(STATIC_INVARIANTS)
    assert sorted(ACCEPTANCE_SUITES) == list(range(1, 13))
    for name in ACCEPTANCE_SUITES.values():
        assert name in SUITES
    # the larger-scale rerun stays out of the invariant ownership map
    assert SUITES["extended"][1] == ()


def test_suite_result_bookkeeping():
    r = SuiteResult("demo")
    assert r.passed
    r.check("a", "x == y", True, "fine")
    assert r.cases == 1 and r.passed
    r.check("b", "x <= y", False, "3 vs 2")
    assert r.cases == 2 and not r.passed
    assert r.failures == [("b", "x <= y", "3 vs 2")]
    r2 = SuiteResult("bulk")
    r2.check_bulk("scan", ">= 0", 50, [])
    assert r2.cases == 50 and r2.passed
    r2.check_bulk("scan2", ">= 0", 10, ["n=4", "n=9"])
    assert r2.cases == 60 and len(r2.failures) == 1
    assert "2 violations" in r2.failures[0][2]


def test_unknown_suite_rejected():
    with pytest.raises(InputError, match="unknown suite"):
        run_suite("no-such-suite")


def test_quick_suites_pass():
    for name in ("mertens-products", "delay-grid"):
        r = run_suite(name)
        assert r.passed, r.failures
        assert r.cases > 0
        assert r.elapsed >= 0.0
    assert run_suite("mertens-products").cases == 3


def test_all_aggregates_and_passes():
    r = run_suite("all")
    assert r.passed, r.failures[:5]
    assert r.name == "all"
    assert r.cases > 130_000
    assert r.elapsed > 0.0


def test_bv_scan_matches_direct_recomputation(tables_small):
    x = 3000
    scan = bv_scan(x, 4, tables_small)
    assert [k for k, _ in scan.rows] == [1, 2, 3, 4]
    assert scan.total == pytest.approx(math.fsum(e for _, e in scan.rows), abs=1e-12)
    ps = [int(p) for p in tables_small.primes if p <= x]
    li = [li_eval(float(p)) for p in ps]
    li_x = li_eval(float(x))
    got = dict(scan.rows)
    for k, phi in ((1, 1), (3, 2), (4, 2)):
        best = 0.0
        residues = [l for l in range(k) if math.gcd(l, k) == 1] or [0]
        for l in residues:
            c = 0
            for p, li_p in zip(ps, li):
                before = abs(c - li_p / phi)
                if p % k == l % k:
                    c += 1
                after = abs(c - li_p / phi)
                best = max(best, before, after)
            best = max(best, abs(c - li_x / phi))
        assert got[k] == pytest.approx(best, abs=1e-7)


def test_bv_scan_k1_tracks_prime_count_error(tables_small):
    scan = bv_scan(10_000, 1, tables_small)
    endpoint = abs(prime_pi(10_000, tables_small) - li_eval(10_000.0))
    assert scan.rows[0][1] >= endpoint - 1e-6


def test_bv_scan_threads_match(tables_small):
    a = bv_scan(10_000, 12, tables_small)
    b = bv_scan(10_000, 12, tables_small, threads=3)
    assert a.rows == b.rows


def test_bv_scan_rejects_bad_ranges(tables_small):
    with pytest.raises(InputError):
        bv_scan(1, 5, tables_small)
    with pytest.raises(InputError):
        bv_scan(100, 0, tables_small)
    with pytest.raises(CapacityError):
        bv_scan(20_000, 5, tables_small)
