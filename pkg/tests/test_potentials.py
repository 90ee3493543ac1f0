import math

import numpy as np
import pytest
from scipy import integrate

from dipfermi import DomainError
from dipfermi import potentials as pot


def test_v3d_limit_values():
    lam = 0.2
    assert pot.v3d_q(0.0, lam) == pytest.approx(16 * math.pi ** 3 * lam,
                                                rel=1e-14)
    assert pot.v3d_q(math.pi / 2, lam) == pytest.approx(
        -8 * math.pi ** 3 * lam, rel=1e-14)
    assert pot.v3d_q(pot.MAGIC_ANGLE, lam) == pytest.approx(0.0, abs=1e-13)


def test_v3d_angular_average_vanishes():
    lam = 0.3
    val, _ = integrate.quad(
        lambda c: pot.v3d_q(math.acos(c), lam), -1, 1, epsabs=1e-13)
    assert val == pytest.approx(0.0, abs=1e-11)


def test_v3d_cutoff_reaches_limit_form():
    lam, th = 0.15, 0.3
    q = 1.0
    full = pot.v3d_q_cutoff(q, th, 1e-6, 1e6, lam)
    assert full == pytest.approx(pot.v3d_q(th, lam), rel=1e-3)


def test_v3d_cutoff_edge_cases():
    lam = 0.15
    assert pot.v3d_q_cutoff(0.0, 0.2, 1e-3, 1e3, lam) == pytest.approx(
        0.0, abs=1e-12)
    # bracket collapses as eps -> R
    assert abs(pot.v3d_q_cutoff(1.0, 0.2, 9.999, 10.0, lam)) < 1e-3 * abs(
        pot.v3d_q(0.2, lam))
    with pytest.raises(DomainError):
        pot.v3d_q_cutoff(1.0, 0.2, 2.0, 1.0, lam)


def test_v2d_constant_term_and_angles():
    lam, kfw = 0.25, 0.1
    v0 = pot.v2d_q(0.0, kfw, 0.0, 0.0, lam)
    assert v0 == pytest.approx(
        16 * math.pi ** 2.5 * lam * 4 / (3 * math.sqrt(math.pi) * kfw),
        rel=1e-14)
    # isotropy in phi_q at theta_E = 0, exact
    a = pot.v2d_q(0.3, kfw, 0.0, 0.1, lam)
    b = pot.v2d_q(0.3, kfw, 0.0, 2.0, lam)
    assert a == b
    # magic angle + phi_q = pi/4 kills the constant term
    v = pot.v2d_q(0.0, kfw, pot.MAGIC_ANGLE, math.pi / 4, lam)
    assert v == pytest.approx(0.0, abs=1e-13)


def test_v1d_values_and_forms():
    lam, kfw = 0.2, 0.05
    v0 = pot.v1d_q(0.0, kfw, 0.0, lam)
    assert v0 == pytest.approx(-math.pi ** 3 * lam / (3 * kfw ** 2),
                               rel=1e-14)
    assert pot.v1d_q(0.7, kfw, pot.MAGIC_ANGLE, lam) == pytest.approx(
        0.0, abs=1e-12)
    # full and small-qw forms agree to 1% for q w = 0.01
    q = 0.01 / kfw
    full = pot.v1d_q(q, kfw, 0.0, lam, "full")
    small = pot.v1d_q(q, kfw, 0.0, lam, "small_qw")
    assert full == pytest.approx(small, rel=0.01)
    # even in q
    assert pot.v1d_q(-0.7, kfw, 0.0, lam) == pot.v1d_q(0.7, kfw, 0.0, lam)


def test_v1d_small_q_log_exponent():
    lam, kfw = 0.2, 0.05
    qs = np.geomspace(1e-4, 1e-3, 8) / kfw
    v0 = pot.v1d_q(0.0, kfw, 0.0, lam)
    diff = np.array([pot.v1d_q(q, kfw, 0.0, lam) - v0 for q in qs])
    # strip the logarithm, fit the power of the prefactor
    y = np.log(np.abs(diff / np.log(qs * kfw)))
    expo = np.polyfit(np.log(qs), y, 1)[0]
    assert expo == pytest.approx(2.0, abs=0.05)


def test_potentials_linear_in_lambda():
    assert pot.v3d_q(0.3, 0.4) == 2.0 * pot.v3d_q(0.3, 0.2)
    assert pot.v2d_q(0.2, 0.1, 0.0, 0.0, 0.4) == 2.0 * pot.v2d_q(
        0.2, 0.1, 0.0, 0.0, 0.2)
    assert pot.v1d_q(0.2, 0.1, 0.0, 0.4) == 2.0 * pot.v1d_q(0.2, 0.1, 0.0, 0.2)


def test_v1d_overflow_guard():
    # q^2 w^2 beyond the exp overflow range must stay finite
    val = pot.v1d_q(1e3, 0.1, 0.0, 0.2, "full")
    assert math.isfinite(val)
