"""Shared fixtures for the fracint test suite"""

import math

import pytest

from src.models.operator import Domain, OperatorParams, Side

SQRT_PI = math.sqrt(math.pi)
#: 1 / gamma(1.5) = 2 / sqrt(pi)
INV_GAMMA_3_2 = 2.0 / SQRT_PI


@pytest.fixture
def rl_half():
    """Riemann-Liouville operator of order 1/2 from the origin"""
    return OperatorParams(alpha=0.5, beta=1.0, rho=1.0)


@pytest.fixture
def katugampola_half():
    return OperatorParams(alpha=0.5, beta=0.5, rho=2.0)


@pytest.fixture
def general_left():
    """A left operator with every parameter away from its special values"""
    return OperatorParams(alpha=0.75, beta=0.3, rho=1.5, eta=0.4, kappa=0.2, domain=Domain(0.5, 4.0))


@pytest.fixture
def general_right():
    return OperatorParams(alpha=0.6, beta=-0.2, rho=0.8, eta=0.3, kappa=0.5, side=Side.RIGHT,
                          domain=Domain(0.5, 3.0))
