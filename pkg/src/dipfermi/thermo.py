"""Noninteracting finite-temperature thermodynamics in reduced units.

Reduced chemical potential mu0_tilde(t) per dimension, the Fermi occupation
of reduced momentum x = k/k_F0, and the (minus) energy derivative of the
occupation that weights all thermal quadratures.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import DomainError, NumericsError
from .units import Dimension
from . import specfun

_GAMMA_HALF = {1: math.gamma(1.5), 2: 1.0, 3: math.gamma(2.5)}


def mu0_reduced(dimension: Dimension, t: float) -> float:
    """mu_0/E_F of the ideal gas at reduced temperature t.

    2D is the closed form t*ln(e^(1/t) - 1); 1D and 3D solve the density
    normalization -Li_(d/2)(-e^(mu/t)) Gamma(d/2+1) t^(d/2) = 1 by a
    bracketing root-find (tolerance 1e-12 absolute on mu).
    """
    if t < 0:
        raise DomainError("t must be >= 0")
    if t == 0.0:
        return 1.0
    if dimension is Dimension.TWO:
        # stable form of t*ln(e^(1/t) - 1) for small t
        if t < 0.02:
            return 1.0 + t * math.log(-math.expm1(-1.0 / t))
        return t * math.log(math.expm1(1.0 / t))

    s = dimension.d / 2.0
    pref = _GAMMA_HALF[dimension.d] * t**s

    def resid(mu):
        return -specfun.polylog_negexp(s, mu / t) * pref - 1.0

    lo, hi = -50.0 * t, 2.0
    flo, fhi = resid(lo), resid(hi)
    for _ in range(60):
        if flo * fhi <= 0.0:
            break
        lo, hi = lo * 2.0 - 1.0, hi + 1.0
        flo, fhi = resid(lo), resid(hi)
    else:
        raise NumericsError(
            f"mu0 bracket expansion failed (d={dimension.d}, t={t}): "
            f"f({lo})={flo}, f({hi})={fhi}")
    return float(optimize.brentq(resid, lo, hi, xtol=1e-12, rtol=8.9e-16))


def mu0_minus_t_dmu0(dimension: Dimension, t: float, h: float = 1e-5) -> float:
    """d mu_0 / d E_F along the density path = mu0_tilde - t d mu0_tilde/dt.

    Closed form 1/(1 - e^(-1/t)) in 2D; central differences elsewhere.
    This is the noninteracting kappa_0/kappa.
    """
    if t == 0.0:
        return 1.0
    if dimension is Dimension.TWO:
        return 1.0 / (-math.expm1(-1.0 / t))
    step = h * max(t, 0.01)
    dmu = (mu0_reduced(dimension, t + step)
           - mu0_reduced(dimension, max(t - step, 1e-300))) / (2.0 * step)
    return mu0_reduced(dimension, t) - t * dmu


@dataclass(frozen=True)
class OccupationKernel:
    """Fermi occupation n_0 of reduced momentum at fixed (t, mu0_tilde)."""
    t: float
    mu0_tilde: float
    dimension: Dimension


def occupation(kernel: OccupationKernel, x):
    """n_0(x) = 1/(e^((x^2 - mu0_tilde)/t) + 1); exact step at t = 0."""
    x = np.asarray(x, dtype=float)
    if kernel.t == 0.0:
        out = np.where(x * x < kernel.mu0_tilde, 1.0, 0.0)
        out = np.where(x * x == kernel.mu0_tilde, 0.5, out)
    else:
        z = np.clip((x * x - kernel.mu0_tilde) / kernel.t, -700.0, 700.0)
        out = 1.0 / (np.exp(z) + 1.0)
    return float(out) if out.ndim == 0 else out


def occ_weight(t: float, mu0_tilde: float, x):
    """-d n_0/d(eps/E_F) = e^z / (t (e^z + 1)^2), z = (x^2 - mu)/t.

    The positive weight that localizes every thermal quadrature on the
    Fermi surface.  Requires t > 0.
    """
    if t <= 0.0:
        raise DomainError("occ_weight requires t > 0")
    x = np.asarray(x, dtype=float)
    z = (x * x - mu0_tilde) / t
    out = _logistic_weight(z) / t
    return float(out) if out.ndim == 0 else out


def energy_weight(t: float, mu0_tilde: float, eps):
    """Same weight as `occ_weight` but parameterized by reduced energy."""
    if t <= 0.0:
        raise DomainError("energy_weight requires t > 0")
    z = (np.asarray(eps, dtype=float) - mu0_tilde) / t
    out = _logistic_weight(z) / t
    return float(out) if out.ndim == 0 else out


def _logistic_weight(z):
    z = np.clip(z, -500.0, 500.0)
    ez = np.exp(-np.abs(z))          # symmetric, overflow-free
    return ez / (1.0 + ez) ** 2


def support_radius(t: float, mu0_tilde: float, c: float = 40.0) -> float:
    """Reduced momentum beyond which n_0 < ~1e-17: sqrt(mu + c*t)."""
    return math.sqrt(max(mu0_tilde, 0.0) + c * max(t, 0.0)) if \
        (mu0_tilde + c * t) > 0 else 0.0


def density_closure(dimension: Dimension, t: float, mu0_tilde: float) -> float:
    """d * int x^(d-1) n_0(x) dx, which must equal 1 in reduced units."""
    from scipy import integrate

    kern = OccupationKernel(t=t, mu0_tilde=mu0_tilde, dimension=dimension)
    d = dimension.d
    hi = support_radius(t, mu0_tilde, 45.0) + 1.0
    val, _ = integrate.quad(lambda x: d * x ** (d - 1) * occupation(kern, x),
                            0.0, hi, limit=200,
                            points=[math.sqrt(abs(mu0_tilde))] if mu0_tilde > 0 else None,
                            epsabs=1e-12, epsrel=1e-10)
    return val
