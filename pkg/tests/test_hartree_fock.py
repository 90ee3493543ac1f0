import math

import numpy as np
import pytest

from dipfermi import hartree_fock as hf
from dipfermi.potentials import MAGIC_ANGLE
from dipfermi.units import Dimension
from conftest import make_state

PI2 = math.pi ** 2


# ---------------------------------------------------------------- 3D
def test_sigma3d_zero_t_anchor(st3):
    s = hf.sigma3d(1.0, 0.0, st3(0.0)).sigma
    assert s / (4 * math.pi * 0.1) == pytest.approx(-1 / 3, abs=1e-10)


def test_sigma3d_magic_angle_zero(st3):
    assert hf.sigma3d(1.0, MAGIC_ANGLE, st3(0.05)).sigma == pytest.approx(
        0.0, abs=1e-12)


def test_sigma3d_low_t_residual_scaling(st3):
    res = {}
    for t in (0.1, 0.05):
        st = st3(t)
        res[t] = hf.sigma3d(1.0, 0.0, st).sigma \
            - hf.sigma3d(1.0, 0.0, st, "lowT").sigma
    assert abs(res[0.1] / res[0.05]) >= 12.0


def test_dsigma3d_identity_vs_central_difference(st3):
    st = st3(0.05)
    ident = hf.dsigma3d_dk_kf(0.0, st).dsigma_dk
    h = 2e-4
    fd = (hf.sigma3d(1 + h, 0.0, st).sigma
          - hf.sigma3d(1 - h, 0.0, st).sigma) / (2 * h)
    assert ident == pytest.approx(fd, rel=1e-5)


def test_dsigma3d_low_t_limit(st3):
    val = hf.dsigma3d_dk_kf(0.0, st3(0.0)).dsigma_dk
    assert val / (-2 * math.pi * 0.1) == pytest.approx(1.0, rel=1e-10)
    # sign flips between pole and equator
    t = 0.05
    assert hf.dsigma3d_dk_kf(0.0, st3(t)).dsigma_dk \
        * hf.dsigma3d_dk_kf(math.pi / 2, st3(t)).dsigma_dk < 0


def test_sigma3d_pure_d_wave(st3):
    # stripped ratio is angle independent away from the P2 zero
    st = st3(0.08)
    from dipfermi.potentials import p2
    vals = []
    for th in np.linspace(0.05, math.pi / 2, 10):
        if abs(p2(math.cos(th))) < 0.05:
            continue
        vals.append(hf.sigma3d(1.0, th, st).sigma / p2(math.cos(th)))
    assert np.max(np.abs(np.diff(vals))) < 1e-9 * abs(vals[0])


def test_sigma3d_linear_in_lambda(st3):
    a = hf.sigma3d(1.0, 0.0, st3(0.05, lam=0.05)).sigma
    b = hf.sigma3d(1.0, 0.0, st3(0.05, lam=0.10)).sigma
    assert b == pytest.approx(2 * a, rel=1e-12)


# ---------------------------------------------------------------- 2D
def test_sigma2d_iso_anchors(st2):
    pref = 16 * math.sqrt(math.pi) * 0.1
    assert hf.sigma2d_iso(1.0, st2(0.0)).sigma / pref == pytest.approx(
        8 / 9, abs=1e-10)
    assert hf.dsigma2d_iso_dk_kf(st2(0.0)).dsigma_dk / pref == pytest.approx(
        2 / 3, abs=1e-10)


@pytest.mark.parametrize("quantity,builder", [
    ("sigma", lambda st: (hf.sigma2d_iso(1.0, st).sigma,
                          hf.sigma2d_iso(1.0, st, "lowT").sigma)),
    ("dsigma", lambda st: (hf.dsigma2d_iso_dk_kf(st).dsigma_dk,
                           hf.dsigma2d_iso_dk_kf(st, "lowT").dsigma_dk)),
])
def test_sigma2d_low_t_residual_scaling(st2, quantity, builder):
    res = {}
    for t in (0.04, 0.02):
        num, low = builder(st2(t))
        res[t] = num - low
    assert abs(res[0.04] / res[0.02]) >= 2 ** 3.5


def test_dsigma2d_dn_vs_density_finite_difference(st2):
    # independent oracle: differentiate lam*EF*G(t(n)) over density
    from dipfermi.units import scale_density, ef_ratio
    st = st2(0.2)
    analytic = hf.dsigma2d_iso_dn(st).dsigma_dn
    h = 1e-5
    up, dn = scale_density(st, 1 + h), scale_density(st, 1 - h)
    fd = (hf.sigma2d_iso(1.0, up).sigma * ef_ratio(Dimension.TWO, 1 + h)
          - hf.sigma2d_iso(1.0, dn).sigma * ef_ratio(Dimension.TWO, 1 - h)) \
        / (2 * h)
    assert analytic == pytest.approx(fd, rel=1e-4)


def test_sigma2d_smooth_through_fermi_point(st2):
    st = st2(0.1)
    ks = np.linspace(0.9, 1.1, 21)
    vals = np.array([hf.sigma2d_iso(float(k), st).sigma for k in ks])
    second = np.abs(np.diff(vals, 2))
    assert np.max(second) < 5e-4 * abs(vals[10])


def test_sigma2d_ani_anchors(st2):
    st = st2(0.0, te=0.4)
    bracket = hf.sigma2d_ani(1.0, 0.0, st).sigma / \
        (-(8 * math.sqrt(math.pi) / 3) * 0.1 * math.sin(0.4) ** 2)
    assert bracket == pytest.approx(8 / 5, abs=1e-9)
    assert hf.sigma2d_ani(1.0, 0.3, st2(0.1, te=0.0)).sigma == 0.0
    assert hf.sigma2d_ani(1.0, math.pi / 4, st).sigma == pytest.approx(
        0.0, abs=1e-14)
    res = {}
    for t in (0.04, 0.02):
        stt = st2(t, te=0.4)
        res[t] = hf.sigma2d_ani(1.0, 0.0, stt).sigma \
            - hf.sigma2d_ani(1.0, 0.0, stt, "lowT").sigma
    assert abs(res[0.04] / res[0.02]) >= 2 ** 3.5


# ---------------------------------------------------------------- 1D
def test_sigma1d_forms_agree_small_width(st1):
    st = st1(0.0, kfw=0.01)
    a = hf.sigma1d_kf(st, "small_kfw").sigma
    b = hf.sigma1d_kf(st, "general").sigma
    assert a == pytest.approx(b, rel=0.01)


def test_sigma1d_magic_angle(st1):
    st = st1(0.05, te=MAGIC_ANGLE)
    assert hf.sigma1d_kf(st, "general").sigma == pytest.approx(0.0, abs=1e-12)


def test_sigma1d_general_vs_quadrature(st1):
    st = st1(0.1, kfw=0.5)
    low = hf.sigma1d_kf(st, "general").sigma
    num = hf.sigma1d_kf(st, "numeric").sigma
    assert low == pytest.approx(num, rel=1e-3)


@pytest.mark.parametrize("kfw", [0.1, 0.5])
def test_sigma1d_low_t_residual_scaling(st1, kfw):
    res = {}
    for t in (0.04, 0.02):
        st = st1(t, kfw=kfw)
        res[t] = hf.sigma1d_kf(st, "numeric").sigma \
            - hf.sigma1d_kf(st, "general").sigma
    assert abs(res[0.04] / res[0.02]) >= 2 ** 3.5


def test_dsigma1d_low_t_vs_numeric(st1):
    res = {}
    for t in (0.04, 0.02):
        st = st1(t, kfw=0.1)
        res[t] = hf.dsigma1d_dk_kf(st).dsigma_dk \
            - hf.dsigma1d_dk_kf(st, "lowT").dsigma_dk
    assert abs(res[0.04] / res[0.02]) >= 2 ** 3.5


def test_dsigma1d_zero_t_closed_form(st1):
    from dipfermi.specfun import exp_gamma0
    st = st1(0.0, kfw=0.3)
    pref = 0.5 * PI2 * 0.1 * (-0.5)
    expect = pref * (-4.0 * exp_gamma0(4 * 0.3 ** 2))
    assert hf.dsigma1d_dk_kf(st).dsigma_dk == pytest.approx(expect, rel=1e-10)
