"""Shared fixtures: the expensive orbit runs and lift fits are session-scoped."""

import pytest

from siegelscale.contfrac import parse_rotation_number
from siegelscale.bounds import constants_ledger
from siegelscale.dynamics import (
    backward_returns,
    iterate_returns,
    rotation_control_returns,
)
from siegelscale.blaschke import CircleLift, solve_t


@pytest.fixture(scope="session")
def golden():
    return parse_rotation_number(";1")


@pytest.fixture(scope="session")
def two_bar():
    return parse_rotation_number(";2")


@pytest.fixture(scope="session")
def ledger_b1():
    return constants_ledger(Q=8, B=1)


@pytest.fixture(scope="session")
def ledger_b2():
    return constants_ledger(Q=8, B=2)


@pytest.fixture(scope="session")
def golden_fwd(golden):
    return iterate_returns(golden, 20)


@pytest.fixture(scope="session")
def golden_bwd(golden):
    return backward_returns(golden, 16)


@pytest.fixture(scope="session")
def golden_dense(golden):
    return iterate_returns(golden, 18, keep_dense=True, extend_to=320_000)


@pytest.fixture(scope="session")
def two_bar_dense(two_bar):
    return iterate_returns(two_bar, 14, keep_dense=True, extend_to=320_000)


@pytest.fixture(scope="session")
def golden_control(golden):
    return rotation_control_returns(golden, 18, keep_dense=True, extend_to=200_000)


@pytest.fixture(scope="session")
def golden_lift(golden):
    return CircleLift(solve_t(golden, tol=1e-8).t)


@pytest.fixture(scope="session")
def two_bar_lift(two_bar):
    return CircleLift(solve_t(two_bar, tol=1e-8).t)
