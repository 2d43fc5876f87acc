"""sievelab: small-sieve bounds with exact brute-force cross checks.

The package builds sifting problems over several integer sequences,
computes classical upper and lower bounds for them (inclusion-exclusion,
the quadratic-form sieve, combinatorial truncations, weighted variants),
tabulates the limit curves those bounds approach, and verifies every
bound numerically against exact counts.
"""

from .arith import (
    EULER_GAMMA,
    MultStats,
    PrimeTables,
    build_tables,
    factorize,
    integrate_adaptive,
    li_eval,
    mult_stats,
    pi_ap,
    prime_pi,
)
from .buchstab import (
    BuchstabGrid,
    build_grid,
    evaluate,
    grid_cached,
    load_grid,
    save_grid,
)
from .errors import CapacityError, DensityRangeError, InputError, ZeroDensityError
from .harness import (
    ACCEPTANCE_SUITES,
    STATIC_INVARIANTS,
    SUITES,
    BVScanResult,
    SuiteResult,
    bv_scan,
    coverage_problems,
    run_suite,
)
from .legendre import (
    MertensValue,
    legendre_count,
    legendre_remainder_sum,
    mertens_products,
    problem_W,
)
from .parity import (
    L_summatory,
    ParityRow,
    S_pm_exact,
    prediction_row,
    recursion_check,
    rough_signed_count,
)
from .problem import (
    MultiplicativeDensity,
    PrimeSet,
    SieveProblem,
    make_problem,
    sift_exact,
    sifted_members,
)
from .rosser import (
    BoundPair,
    FundamentalRow,
    chain_member,
    combinatorial_bounds,
    fundamental_lemma_report,
    sandwich_values,
    truncated_mobius_sum,
    truncated_mu,
)
from .selberg import (
    BrunTitchmarshReport,
    PairBoundReport,
    SelbergWeights,
    SieveReport,
    SieveWeights,
    brun_titchmarsh,
    dimension_diagnostics,
    fundamental_upper_bound,
    goldbach_report,
    lambda_weights,
    mu_plus,
    twin_constant,
    twin_report,
    y_values,
)
from .weighted import (
    ChenReport,
    WeightedConfig,
    W_exact,
    chen_report,
    lambda_r,
    level_condition,
    member_weight_term,
    pr_count,
    repeated_window_factor_count,
    richert_weight,
)

__version__ = "0.1.0"

__all__ = [
    "ACCEPTANCE_SUITES",
    "BVScanResult",
    "BoundPair",
    "BrunTitchmarshReport",
    "BuchstabGrid",
    "CapacityError",
    "ChenReport",
    "DensityRangeError",
    "EULER_GAMMA",
    "FundamentalRow",
    "InputError",
    "L_summatory",
    "MertensValue",
    "MultStats",
    "MultiplicativeDensity",
    "PairBoundReport",
    "ParityRow",
    "PrimeSet",
    "PrimeTables",
    "STATIC_INVARIANTS",
    "SUITES",
    "S_pm_exact",
    "SelbergWeights",
    "SieveProblem",
    "SieveReport",
    "SieveWeights",
    "SuiteResult",
    "W_exact",
    "WeightedConfig",
    "ZeroDensityError",
    "brun_titchmarsh",
    "build_grid",
    "build_tables",
    "bv_scan",
    "chain_member",
    "chen_report",
    "combinatorial_bounds",
    "coverage_problems",
    "dimension_diagnostics",
    "evaluate",
    "factorize",
    "fundamental_lemma_report",
    "fundamental_upper_bound",
    "goldbach_report",
    "grid_cached",
    "integrate_adaptive",
    "lambda_r",
    "lambda_weights",
    "legendre_count",
    "legendre_remainder_sum",
    "level_condition",
    "li_eval",
    "load_grid",
    "make_problem",
    "member_weight_term",
    "mertens_products",
    "mu_plus",
    "mult_stats",
    "pi_ap",
    "pr_count",
    "prediction_row",
    "prime_pi",
    "problem_W",
    "recursion_check",
    "repeated_window_factor_count",
    "richert_weight",
    "rough_signed_count",
    "run_suite",
    "sandwich_values",
    "save_grid",
    "sift_exact",
    "sifted_members",
    "truncated_mobius_sum",
    "truncated_mu",
    "twin_constant",
    "twin_report",
    "y_values",
]
