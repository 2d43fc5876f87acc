"""Inclusion-exclusion sifting is exact, and its remainder sum is honest.

Counts members of several sequences left after removing multiples of
every prime below z, once by alternating divisor sums and once by brute
force, then shows the |S - X W| gap sitting under the remainder budget.
"""

from sievelab import (
    build_tables,
    legendre_count,
    legendre_remainder_sum,
    make_problem,
    problem_W,
    sift_exact,
)

t = build_tables(100_000)

problems = [
    make_problem("interval", {"x": 0, "y": 50_000}, t),
    make_problem("goldbach_product", {"two_N": 10_000}, t),
    make_problem("shifted_prime", {"N": 30_000}, t),
    make_problem("square_plus_one", {"x": 7000}, t),
    make_problem("liouville_minus", {"x": 20_000}, t),
]

print("exact agreement, divisor sums vs brute force")
for p in problems:
    for z in (10.0, 20.0, 30.0):
        a = legendre_count(p, z)
        b = sift_exact(p, z)
        marker = "ok" if a == b else "MISMATCH"
        print(f"  {p.label:<28} z={z:>4.0f}  count={a:>7}  {marker}")

print()
print("main term and remainder budget at z = 25")
for p in problems:
    s = sift_exact(p, 25.0)
    mv = problem_W(p, 25.0)
    main = p.X * mv.W
    budget = legendre_remainder_sum(p, 25.0)
    gap = abs(s - main)
    print(
        f"  {p.label:<28} S={s:>7}  X*W={main:>10.1f}"
        f"  |S - X*W|={gap:>8.1f}  sum|R_d|={budget:>8.1f}"
    )
print()
print("the gap never exceeds the budget; that is the whole game")
