import math

import numpy as np
import pytest

from dipfermi import thermo
from dipfermi.units import Dimension


def test_mu0_2d_closed_form():
    t = 0.1
    assert thermo.mu0_reduced(Dimension.TWO, t) == pytest.approx(
        t * math.log(math.exp(1 / t) - 1.0), rel=1e-12)


@pytest.mark.parametrize("dim", list(Dimension))
def test_mu0_zero_temperature(dim):
    assert thermo.mu0_reduced(dim, 0.0) == 1.0


def test_mu0_3d_low_t_expansion_and_residual_scaling():
    # residual against 1 - pi^2 t^2/12 must scale as t^4
    r = {}
    for t in (0.05, 0.025):
        r[t] = thermo.mu0_reduced(Dimension.THREE, t) \
            - (1.0 - math.pi ** 2 * t * t / 12.0)
    assert abs(r[0.05]) < 5e-5
    assert abs(r[0.05] / r[0.025]) > 12.0


def test_mu0_1d_low_t_sign():
    t = 0.05
    assert thermo.mu0_reduced(Dimension.ONE, t) == pytest.approx(
        1.0 + math.pi ** 2 * t * t / 12.0, abs=5e-5)


def test_mu0_decreasing_at_high_t():
    for dim in (Dimension.TWO, Dimension.THREE):
        mus = [thermo.mu0_reduced(dim, t) for t in (1.0, 2.0, 4.0, 8.0)]
        assert all(b < a for a, b in zip(mus, mus[1:]))


def test_occupation_step_and_half():
    kern = thermo.OccupationKernel(t=0.0, mu0_tilde=1.0,
                                   dimension=Dimension.TWO)
    assert thermo.occupation(kern, 0.5) == 1.0
    assert thermo.occupation(kern, 1.5) == 0.0
    t = 0.1
    mu = thermo.mu0_reduced(Dimension.TWO, t)
    kern = thermo.OccupationKernel(t=t, mu0_tilde=mu, dimension=Dimension.TWO)
    assert thermo.occupation(kern, math.sqrt(mu)) == pytest.approx(0.5,
                                                                   abs=1e-12)


@pytest.mark.parametrize("dim", list(Dimension))
@pytest.mark.parametrize("t", [0.05, 0.5, 2.0])
def test_density_closure(dim, t):
    mu = thermo.mu0_reduced(dim, t)
    assert thermo.density_closure(dim, t, mu) == pytest.approx(1.0, abs=1e-8)


def test_occ_weight_matches_logistic_derivative():
    t, mu = 0.17, 0.93
    for x in (0.3, 0.9, 1.1):
        h = 1e-6
        kern = lambda eps: 1.0 / (np.exp((eps - mu) / t) + 1.0)
        fd = -(kern(x * x + h) - kern(x * x - h)) / (2 * h)
        assert thermo.occ_weight(t, mu, x) == pytest.approx(fd, rel=1e-9)
