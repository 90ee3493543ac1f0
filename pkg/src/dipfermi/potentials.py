"""Momentum-space dipolar interactions for all dimensionalities.

Reduced-unit convention: momenta in k_F0, the transverse width enters only
through kfw = k_F0*w, and the returned values are in E_F/k_F0^d.  The 2D and
1D forms are the gaussian-profile reductions of the 3D interaction; the
gaussian convention is canonical here (the sharp-cutoff derivation differs
by an order-unity factor in front of w).
"""

import math

import numpy as np
from scipy import special

from . import DomainError
from .constants import EULER_GAMMA
from .specfun import exp_gamma0


def p2(x):
    """Second Legendre polynomial (3x^2 - 1)/2."""
    x = np.asarray(x, dtype=float)
    out = 0.5 * (3.0 * x * x - 1.0)
    return float(out) if out.ndim == 0 else out


MAGIC_ANGLE = math.acos(1.0 / math.sqrt(3.0))  # P2(cos theta) = 0


def v3d_q(theta_q, lam3d: float):
    """Cutoff-free 3D dipolar interaction 16 pi^3 lam P2(cos theta_q).

    Depends on the direction of q only; units E_F/k_F0^3.
    """
    if lam3d < 0:
        raise DomainError("lambda must be >= 0")
    return 16.0 * math.pi**3 * lam3d * p2(np.cos(theta_q))


def v3d_q_cutoff(q, theta_q, epsilon: float, big_r: float, lam3d: float):
    """3D interaction with short cutoff epsilon and long cutoff R:

    48 pi^3 lam P2(cos theta_q) [j1(q eps)/(q eps) - j1(q R)/(q R)],
    reducing to `v3d_q` as q*eps -> 0, q*R -> infinity.  Lengths in 1/k_F0.
    """
    if not 0.0 < epsilon < big_r:
        raise DomainError("cutoffs must satisfy 0 < epsilon < R")
    q = np.asarray(q, dtype=float)

    def j1_over_x(x):
        x = np.asarray(x, dtype=float)
        small = np.abs(x) < 1e-4
        xs = np.where(small, 1.0, x)
        out = np.where(small, 1.0 / 3.0 - x * x / 30.0,
                       (np.sin(xs) / xs**2 - np.cos(xs) / xs) / xs)
        return out

    bracket = j1_over_x(q * epsilon) - j1_over_x(q * big_r)
    out = 48.0 * math.pi**3 * lam3d * p2(np.cos(theta_q)) * bracket
    return float(out) if np.ndim(out) == 0 else out


def v2d_q(q, kfw: float, theta_e: float, phi_q, lam2d: float):
    """Quasi-2D interaction (gaussian transverse profile), q*w << 1 form:

    16 pi^(5/2) lam2d [ 4 P2(cos theta_E)/(3 sqrt(pi) kfw)
                        - q (P2(cos theta_E) - sin^2(theta_E) cos(2 phi_q)/2) ]

    in units E_F/k_F0^2, q in k_F0.  Affine in q by construction.
    """
    if kfw <= 0:
        raise DomainError("kfw must be positive")
    q = np.asarray(q, dtype=float)
    p2e = p2(math.cos(theta_e))
    const = 4.0 * p2e / (3.0 * math.sqrt(math.pi) * kfw)
    slope = p2e - 0.5 * math.sin(theta_e) ** 2 * np.cos(2.0 * np.asarray(phi_q))
    out = 16.0 * math.pi**2.5 * lam2d * (const - q * slope)
    return float(out) if np.ndim(out) == 0 else out


def v1d_q(q, kfw: float, theta_e: float, lam1d: float, form: str = "full"):
    """Quasi-1D interaction (gaussian radial profile), units E_F/k_F0^3.

    form='full':     pi^3 lam P2(cos theta_E) [-1/(3 kfw^2) + q^2 e^(q^2 kfw^2)
                     Gamma(0, q^2 kfw^2)]
    form='small_qw': the q*w -> 0 limit with the Euler-constant logarithm.

    Even in q; the e^x Gamma(0,x) factor switches to its asymptotic series
    at large argument to avoid overflow.
    """
    if kfw <= 0:
        raise DomainError("kfw must be positive")
    q = np.asarray(q, dtype=float)
    pref = math.pi**3 * lam1d * p2(math.cos(theta_e))
    y = (q * kfw) ** 2
    if form == "full":
        tail = np.where(y > 0, _xe_gamma0(y), 0.0)
        out = pref * (-1.0 / (3.0 * kfw**2) + q * q * tail)
    elif form == "small_qw":
        logterm = np.where(y > 0, np.log(np.sqrt(np.where(y > 0, y, 1.0))), 0.0)
        out = -pref * (1.0 / (3.0 * kfw**2)
                       + q * q * (EULER_GAMMA + 2.0 * logterm))
    else:
        raise DomainError(f"unknown quasi-1D form {form!r}")
    return float(out) if np.ndim(out) == 0 else out


def _xe_gamma0(y):
    """e^y Gamma(0, y) elementwise for y > 0 (overflow-safe)."""
    y = np.asarray(y, dtype=float)
    safe = np.where(y > 0, y, 1.0)
    return np.asarray(exp_gamma0(safe))
