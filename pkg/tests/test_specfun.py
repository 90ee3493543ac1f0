import math

import numpy as np
import pytest
from scipy import integrate

from dipfermi import DomainError
from dipfermi import specfun as sf
from dipfermi.constants import EULER_GAMMA


def test_polylog_li32_at_minus_one():
    # Li_3/2(-1) = -(1 - 2^(-1/2)) zeta(3/2) via the alternating series
    ref = sum((-1.0) ** k / k ** 1.5 for k in range(1, 300000))
    assert sf.polylog_negexp(1.5, 0.0) == pytest.approx(ref, abs=1e-9)


def test_polylog_deep_negative_is_leading_term():
    x = -40.0
    assert sf.polylog_negexp(1.5, x) == pytest.approx(-math.exp(x), rel=1e-15)


def test_polylog_sommerfeld_vs_quadrature_oracle():
    # Li_1/2(-e^10) against direct Fermi-Dirac quadrature
    x = 10.0
    val, _ = integrate.quad(lambda v: 2.0 / (np.exp(v * v - x) + 1.0),
                            0, math.sqrt(x + 60), points=[math.sqrt(x)],
                            epsabs=1e-14, limit=200)
    ref = -val / math.gamma(0.5)
    assert sf.polylog_negexp(0.5, x) == pytest.approx(ref, rel=1e-11)


def test_polylog_large_x_asymptote():
    for s in (0.5, 1.5, 2.5):
        x = 60.0
        lead = -x ** s / math.gamma(s + 1.0)
        assert abs(sf.polylog_negexp(s, x) / lead - 1.0) < 1e-3
        x = 1e4
        lead = -x ** s / math.gamma(s + 1.0)
        assert abs(sf.polylog_negexp(s, x) / lead - 1.0) < 1e-6


def test_polylog_monotone_decreasing():
    xs = np.linspace(-8, 40, 60)
    for s in (0.5, 1.5, 2.5):
        vals = [sf.polylog_negexp(s, x) for x in xs]
        assert all(b < a for a, b in zip(vals, vals[1:]))


def test_polylog_rejects_bad_order():
    with pytest.raises(DomainError):
        sf.polylog_negexp(1.0, 0.5)


def test_elliptic_degenerate_points():
    assert sf.ellip_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert sf.ellip_E(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert sf.ellip_E(1.0) == 1.0
    with pytest.raises(DomainError):
        sf.ellip_K(1.0)


def test_elliptic_against_defining_integrals():
    for k in (0.3, 0.5, 0.9, 0.999):
        kk, _ = integrate.quad(
            lambda p: 1 / math.sqrt(1 - k * k * math.sin(p) ** 2),
            0, math.pi / 2, epsabs=1e-14)
        ee, _ = integrate.quad(
            lambda p: math.sqrt(1 - k * k * math.sin(p) ** 2),
            0, math.pi / 2, epsabs=1e-14)
        assert sf.ellip_K(k) == pytest.approx(kk, abs=1e-12)
        assert sf.ellip_E(k) == pytest.approx(ee, abs=1e-12)


def test_gamma_upper_quadrature_and_recurrence():
    ref, _ = integrate.quad(lambda u: math.exp(-u) / u, 1.0, 60.0,
                            epsabs=1e-14, limit=200)
    assert sf.gamma_upper(0, 1.0) == pytest.approx(ref, rel=1e-12)
    for x in (0.2, 1.0, 5.0):
        rec = math.exp(-x) / x - sf.gamma_upper(0, x)
        assert sf.gamma_upper(-1, x) == pytest.approx(rec, rel=1e-12)
    # x e^x Gamma(0,x) -> 1
    assert 1e3 * sf.exp_gamma0(1e3) == pytest.approx(1.0, abs=2e-3)
    with pytest.raises(DomainError):
        sf.gamma_upper(0, -1.0)
    with pytest.raises(DomainError):
        sf.gamma_upper(1, 1.0)


def _meijer_a_oracle(x):
    # brute-force Fermi-sea integral of the quasi-1D exchange kernel at t=0,
    # independent of the cached implementation route
    from scipy.special import exp1
    f = lambda u: u * u * math.exp(min(x * u * u, 600)) * exp1(x * u * u) \
        if u > 0 else 0.0
    val, _ = integrate.quad(f, 0, 1, points=[min(1.0, x ** -0.5)],
                            epsabs=1e-14, epsrel=1e-13, limit=300)
    return -2.0 * val


def test_meijer_a_against_fermi_sea_oracle():
    for x in np.geomspace(1e-4, 100.0, 50):
        ref = _meijer_a_oracle(x)
        assert sf.meijer_g_2232("A", x) == pytest.approx(ref, rel=1e-8)


def test_meijer_a_small_x_log_form():
    kfw = 1e-3
    x = 4 * kfw * kfw
    sigma = 4.0 * sf.meijer_g_2232("A", x)
    closed = (8.0 / 3.0) * (EULER_GAMMA - 2.0 / 3.0
                            + 2.0 * math.log(2.0 * kfw))
    assert sigma == pytest.approx(closed, rel=1e-4)


def test_meijer_b_against_t2_coefficient_oracle(st1):
    # extract the t^2 coefficient of the Fermi-sea integral numerically and
    # compare with the operational variant-B combination at x = 1
    from dipfermi import hartree_fock as hf
    from conftest import make_state
    from dipfermi.units import Dimension
    kfw = 0.5                      # x = 4 kfw^2 = 1
    x = 4 * kfw * kfw

    def sig(t):
        st = make_state(Dimension.ONE, t, lam=0.1, kfw=kfw)
        return hf.sigma1d_kf(st, "numeric").sigma

    c2_small = (sig(0.01) - sig(0.0)) / 0.01 ** 2
    c2_tiny = (sig(0.005) - sig(0.0)) / 0.005 ** 2
    c2 = (4.0 * c2_tiny - c2_small) / 3.0      # Richardson in t^2
    pref = 0.5 * math.pi ** 2 * 0.1 * (-0.5)   # P2(cos pi/2) = -1/2
    bracket = c2 / pref * 6.0 / math.pi ** 2
    # bracket = -1 + x phi + (3/2) G_A - x G_B by construction
    gb = (-1.0 + x * sf.exp_gamma0(x)
          + 1.5 * sf.meijer_g_2232("A", x) - bracket) / x
    assert sf.meijer_g_2232("B", x) == pytest.approx(gb, rel=5e-3)
