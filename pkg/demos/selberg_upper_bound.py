"""The quadratic-form upper sieve in action.

Builds the optimal lambda weights for a toy configuration, checks their
defining contracts, then bounds prime-like counts in an interval and in
the twin configuration where the unconditional constant 8 shows up as a
bound/exact ratio between 3 and 4.
"""

from fractions import Fraction

from sievelab import (
    MultiplicativeDensity,
    PrimeSet,
    build_tables,
    fundamental_upper_bound,
    lambda_weights,
    make_problem,
    twin_report,
)

t = build_tables(1_000_200)

ones = MultiplicativeDensity(lambda p: Fraction(1), "w = 1")
w = lambda_weights(40.0, 20.0, ones, PrimeSet("all"), t)
print(f"support of lambda: {sorted(w.lambdas)}")
print(f"lambda_1 = {w.lambdas[1]}, extremes: min={min(w.lambdas.values())},"
      f" max={max(w.lambdas.values())}")
assert w.lambdas[1] == 1
assert all(abs(v) <= 1 for v in w.lambdas.values())

print()
print("upper bound vs exact count, interval of length 10^6")
p = make_problem("interval", {"x": 0, "y": 1_000_000}, t)
for y in (1000.0, 10_000.0, 100_000.0):
    rep = fundamental_upper_bound(p, y, y**0.5)
    print(
        f"  y={y:>8.0f}  bound={rep.upper_bound:>10.1f}"
        f"  exact={rep.exact_count:>7}  ratio={rep.ratio:.3f}"
    )

print()
print("prime pairs p, p+2 up to x")
for x in (10_000, 100_000, 1_000_000):
    rep = twin_report(x, 1, t)
    print(
        f"  x={x:>8}  bound={rep.bound:>9.0f}  exact={rep.exact:>6}"
        f"  ratio={rep.ratio:.2f}"
    )
print("the ratio hovers near 3.5: the constant in the bound is 8,")
print("the conjectural density constant is 2, and 8/2 ~ 3.5 with the")
print("log-squared correction at these heights")
