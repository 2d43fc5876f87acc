"""End-to-end acceptance run.

One test per capability, each driving the corresponding verification
suite at its pinned tolerances and printing a single pass/fail line.
Run with -v (or -rP) to see the lines.
"""

import pytest

from sievelab.harness import ACCEPTANCE_SUITES, run_suite

TITLES = {
    1: "inclusion-exclusion counts match brute force exactly",
    2: "quadratic-form weights satisfy their exact rational contracts",
    3: "upper/lower sieve weights bracket the indicator with zero violations",
    4: "combinatorial lower <= exact <= best upper on 20+ configurations",
    5: "normalized product over sieve primes stays within 5 percent",
    6: "delay-equation grid hits closed forms, quadrature, and tails",
    7: "scaled counts sit between the limit curves in the deep regime",
    8: "extremal sequence counts track the parity-limit predictions",
    9: "progression prime counts respect the 2x/(phi log) ceiling",
    10: "twin and pair bounds dominate exact counts at the right scale",
    11: "weighted sieve thresholds, margins, and domination hold",
    12: "near-prime pair counts clear the reference floor",
}


@pytest.mark.parametrize("number", sorted(ACCEPTANCE_SUITES))
def test_criterion(number):
    suite = ACCEPTANCE_SUITES[number]
    result = run_suite(suite)
    status = "PASS" if result.passed else "FAIL"
    print(
        f"criterion {number:02d} {status} [{suite}] {TITLES[number]} "
        f"({result.cases} cases, {result.elapsed:.2f}s)"
    )
    for cid, rel, obs in result.failures[:10]:
        print(f"    {cid} | expected {rel} | got {obs}")
    assert result.passed, f"{suite}: {result.failures[:3]}"
