from __future__ import annotations

import math

import numpy as np
import pytest

from sievelab.arith import EULER_GAMMA, integrate_adaptive
from sievelab.buchstab import build_grid, evaluate, grid_cached, load_grid, save_grid
from sievelab.errors import InputError

EG = math.exp(EULER_GAMMA)


def test_closed_forms_frozen(grid):
    assert evaluate(grid, 2, "F") == pytest.approx(EG, abs=1e-15)
    assert abs(evaluate(grid, 2, "F") - 1.7810724) < 1e-6
    assert evaluate(grid, 1.5, "f") == 0.0
    assert evaluate(grid, 3, "f") == pytest.approx(2 * EG * math.log(2) / 3, abs=1e-12)
    assert evaluate(grid, 4, "f") == pytest.approx(2 * EG * math.log(3) / 4, abs=1e-12)
    assert abs(evaluate(grid, 3, "f") - 0.823030) < 1e-6
    assert abs(evaluate(grid, 4, "f") - 0.978354) < 1e-6
    assert abs(evaluate(grid, 2.5, "f") - 0.577730) < 1e-6


def test_F4_against_independent_quadrature(grid):
    inner = integrate_adaptive(lambda u: math.log(u) / (1.0 + u), 1.0, 2.0, 1e-13)
    oracle = 0.5 * EG * (1.0 + inner)
    assert abs(oracle - 1.02164) < 1e-5
    assert abs(evaluate(grid, 4, "F") - oracle) <= 1e-6


def test_F5_and_f5_against_nested_quadrature(grid):
    # one panel beyond every closed form, via quadrature only
    def J(v):
        return integrate_adaptive(lambda u: math.log(u) / (1.0 + u), 1.0, v, 1e-12)

    F4 = 0.5 * EG * (1.0 + J(2.0))
    F5 = (4 * F4 + 2 * EG * integrate_adaptive(
        lambda t: math.log(t - 2.0) / (t - 1.0), 4.0, 5.0, 1e-12)) / 5.0
    assert abs(evaluate(grid, 5, "F") - F5) <= 1e-8

    def F_34(t):
        return 2.0 * EG * (1.0 + J(t - 2.0)) / t

    f4 = 2 * EG * math.log(3.0) / 4.0
    f5 = (4 * f4 + integrate_adaptive(lambda t: F_34(t - 1.0), 4.0, 5.0, 1e-10)) / 5.0
    assert abs(evaluate(grid, 5, "f") - f5) <= 1e-7


def test_join_error_tiny(grid):
    assert grid.join_error <= 1e-6


def test_limits_at_large_s(grid):
    assert abs(evaluate(grid, 15, "F") - 1.0) <= 1e-3
    assert abs(evaluate(grid, 15, "f") - 1.0) <= 1e-3
    # upper stays above lower the whole way out
    for s in np.arange(0.5, 30.0, 0.37):
        assert evaluate(grid, float(s), "F") >= evaluate(grid, float(s), "f")


def test_halved_step_stability(grid):
    fine = build_grid(30, 5e-5)
    ratio = round(grid.step / fine.step)
    idx = np.arange(1, grid.s.size) * ratio
    assert np.nanmax(np.abs(grid.F_values[1:] - fine.F_values[idx])) <= 1e-8
    assert np.nanmax(np.abs(grid.f_values[1:] - fine.f_values[idx])) <= 1e-8


def test_interpolation_vs_fine_grid(grid):
    fine = build_grid(30, 5e-5)
    for s in (4.3217, 6.90041, 13.5555, 29.2024):
        for which in ("F", "f"):
            assert abs(evaluate(grid, s, which) - evaluate(fine, s, which)) <= 1e-8


def test_csv_round_trip(tmp_path):
    g = build_grid(8, 1e-3)
    path = tmp_path / "grid.csv"
    save_grid(g, path)
    back = load_grid(path)
    assert back.step == pytest.approx(g.step)
    assert back.s_max == g.s_max
    assert np.array_equal(g.F_values[1:], back.F_values[1:])
    assert np.array_equal(g.f_values[1:], back.f_values[1:])
    with open(path) as fh:
        assert fh.readline().strip() == "s,F,f"


def test_grid_cache_reuse_and_rebuild(tmp_path):
    path = tmp_path / "cache.csv"
    g1 = grid_cached(8, 1e-3, cache=path)
    assert path.exists()
    g2 = grid_cached(8, 1e-3, cache=path)
    assert np.array_equal(g1.F_values[1:], g2.F_values[1:])
    g3 = grid_cached(10, 1e-3, cache=path)
    assert g3.s_max == 10.0


def test_input_errors(grid):
    with pytest.raises(InputError):
        build_grid(7.5, 1e-3)
    with pytest.raises(InputError):
        build_grid(10, 4e-3)
    with pytest.raises(InputError):
        evaluate(grid, 0.0, "F")
    with pytest.raises(InputError):
        evaluate(grid, 31.0, "f")
    with pytest.raises(InputError):
        evaluate(grid, 3.0, "g")
