import math

import pytest

from dipfermi import thermo
from dipfermi.units import Dimension, ReducedState


def make_state(dim, t, lam=0.1, kfw=0.1, theta_e=None):
    if theta_e is None:
        theta_e = math.pi / 2 if dim is Dimension.ONE else 0.0
    return ReducedState(
        t=t, lam=lam,
        mu0_tilde=thermo.mu0_reduced(dim, t),
        kfw=0.0 if dim is Dimension.THREE else kfw,
        dimension=dim, theta_e=theta_e)


@pytest.fixture
def st3():
    return lambda t, lam=0.1: make_state(Dimension.THREE, t, lam)


@pytest.fixture
def st2():
    return lambda t, lam=0.1, kfw=0.1, te=0.0: make_state(
        Dimension.TWO, t, lam, kfw, te)


@pytest.fixture
def st1():
    return lambda t, lam=0.1, kfw=0.1, te=math.pi / 2: make_state(
        Dimension.ONE, t, lam, kfw, te)
