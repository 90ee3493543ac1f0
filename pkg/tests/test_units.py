import math

import numpy as np
import pytest

from dipfermi import DomainError
from dipfermi.units import (Dimension, PhysicalParams, coupling_lambda,
                            fermi_scales, reduce_params, scale_density)


def krb(density, temp, dim, **kw):
    return PhysicalParams(127.0, 0.57, density, temp, dim, **kw)


def test_fermi_temperature_2d_paper_values():
    # T_F = 24 nK at 1e8 cm^-2 and 240 nK at 1e9 cm^-2 for KRb
    tf1 = fermi_scales(krb(1e8, 10, Dimension.TWO, width_nm=10)).t_f * 1e9
    tf2 = fermi_scales(krb(1e9, 10, Dimension.TWO, width_nm=10)).t_f * 1e9
    assert tf1 == pytest.approx(24.0, rel=0.01)
    assert tf2 == pytest.approx(240.0, rel=0.01)


def test_kf_sqrt_scaling_2d():
    k1 = fermi_scales(krb(1e8, 10, Dimension.TWO, width_nm=10)).k_f0
    k4 = fermi_scales(krb(4e8, 10, Dimension.TWO, width_nm=10)).k_f0
    assert k4 == pytest.approx(2.0 * k1, rel=1e-12)


def test_lambda_order_of_magnitude_anchors():
    # lambda ~ 0.1 for KRb at the reference densities (order anchors only)
    l3 = coupling_lambda(krb(1e12, 10, Dimension.THREE))
    l2 = coupling_lambda(krb(1e8, 10, Dimension.TWO, width_nm=10))
    assert 0.07 <= l3 <= 0.13
    assert 0.07 <= l2 <= 0.13


def test_lambda_2d_frozen_value():
    # direct evaluation of lambda_2D with CODATA constants, frozen
    l2 = coupling_lambda(krb(1e8, 10, Dimension.TWO, width_nm=10))
    assert l2 == pytest.approx(0.09805513456627231, rel=1e-12)


def test_zero_dipole_gives_zero_coupling():
    p = PhysicalParams(127.0, 0.0, 1e8, 10, Dimension.TWO, width_nm=10)
    assert coupling_lambda(p) == 0.0


@pytest.mark.parametrize("dim,expo", [(Dimension.THREE, 1 / 3),
                                      (Dimension.TWO, 1 / 2),
                                      (Dimension.ONE, 1.0)])
def test_lambda_power_laws(dim, expo):
    dens = np.geomspace(1e4, 1e7, 7) if dim is Dimension.ONE else \
        np.geomspace(1e6, 1e9, 7) if dim is Dimension.TWO else \
        np.geomspace(1e10, 1e13, 7)
    lams = [coupling_lambda(krb(n, 10, dim, width_nm=10)) for n in dens]
    fit = np.polyfit(np.log(dens), np.log(lams), 1)[0]
    assert fit == pytest.approx(expo, abs=1e-6)


def test_reduce_roundtrip_and_determinism():
    p = krb(1e9, 25.0, Dimension.TWO, width_nm=10)
    st1, st2 = reduce_params(p), reduce_params(p)
    assert st1 == st2                       # bit-identical
    sc = fermi_scales(p)
    assert st1.t == pytest.approx(25e-9 * 1.380649e-23 / sc.e_f, rel=1e-12)
    assert st1.kfw == pytest.approx(sc.k_f0 * 10e-9, rel=1e-12)


def test_zero_temperature_reduction():
    st = reduce_params(krb(1e9, 0.0, Dimension.TWO, width_nm=10))
    assert st.t == 0.0 and st.mu0_tilde == 1.0


def test_scale_density_exponents():
    st = reduce_params(krb(1e9, 10.0, Dimension.TWO, width_nm=10))
    up = scale_density(st, 4.0)
    assert up.lam == pytest.approx(st.lam * 2.0, rel=1e-12)
    assert up.kfw == pytest.approx(st.kfw * 2.0, rel=1e-12)
    assert up.t == pytest.approx(st.t / 4.0, rel=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        krb(-1e8, 10, Dimension.TWO, width_nm=10)
    with pytest.raises(DomainError):
        krb(1e8, -5, Dimension.TWO, width_nm=10)
    with pytest.raises(DomainError):
        krb(1e8, 10, Dimension.TWO)      # missing width
    with pytest.raises(DomainError):
        PhysicalParams(0.0, 0.5, 1e8, 10, Dimension.TWO, width_nm=10)
