from __future__ import annotations

import pytest

from sievelab.arith import build_tables


@pytest.fixture(scope="session")
def tables_small():
    return build_tables(10_000)


@pytest.fixture(scope="session")
def tables_mid():
    return build_tables(200_000)


@pytest.fixture(scope="session")
def tables_big():
    # large enough for twin pairs p <= 1e6 with p + 2k <= limit, k <= 100
    return build_tables(1_000_200)


@pytest.fixture(scope="session")
def grid():
    from sievelab.buchstab import build_grid

    return build_grid(30, 1e-4)
