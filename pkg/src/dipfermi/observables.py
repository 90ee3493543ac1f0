"""Compressibility ratios, effective masses, the 3D stability line, and the
2D Coulomb-gas comparison formula.

kappa_0/kappa is the derivative d mu/d E_F along the density path at fixed
temperature (kappa_0 = (1/n^2) dn/dE_F of the zero-temperature ideal gas),
so the plotted ratio kappa/kappa_0 equals dE_F/dmu.  The numeric method
follows the density chain rule: t ~ n^(-2/d), lambda ~ n^(1/d) and
kfw ~ n^(1/d) are re-derived at every stencil point.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import DomainError
from .constants import EULER_GAMMA
from .potentials import p2
from .specfun import exp_gamma0
from .thermo import mu0_minus_t_dmu0, mu0_reduced
from .units import Dimension, ReducedState, ef_ratio, scale_density
from . import hartree_fock as hf


@dataclass(frozen=True)
class KappaResult:
    kappa_ratio: float          # kappa/kappa_0
    inv_ratio: float            # kappa_0/kappa
    method: str
    kappa_abs: float | None = None   # 1/(energy*density), physical units


@dataclass(frozen=True)
class EffectiveMass:
    m_over_mstar_radial: float
    m_over_mstar_angular: float
    k: float
    theta_k: float


def mu_over_ef(state: ReducedState) -> float:
    """Interacting chemical potential mu/E_F = mu0_tilde + Sigma_iso(k_F)."""
    d = state.dimension
    if d is Dimension.THREE:
        return state.mu0_tilde     # the 3D self-energy is purely d-wave
    if d is Dimension.TWO:
        return state.mu0_tilde + hf.sigma2d_iso(1.0, state).sigma
    return state.mu0_tilde + hf.sigma1d_kf(state, form="numeric").sigma


def _kappa_inv_fd(state: ReducedState, rel_step: float = 1e-4) -> float:
    """kappa_0/kappa by central differences of mu over density."""
    up, dn = 1.0 + rel_step, 1.0 - rel_step
    mu_p = mu_over_ef(scale_density(state, up)) * ef_ratio(state.dimension, up)
    mu_m = mu_over_ef(scale_density(state, dn)) * ef_ratio(state.dimension, dn)
    return (mu_p - mu_m) / (ef_ratio(state.dimension, up)
                            - ef_ratio(state.dimension, dn))


def kappa_ratio(state: ReducedState, method: str = "numeric") -> KappaResult:
    """Compressibility ratio of the interacting gas at temperature t.

    method='numeric': 3D uses the noninteracting closed form (the d-wave
    self-energy drops out of the isotropic chemical potential); 2D uses the
    analytic density-derivative of the self-energy; 1D uses density central
    differences of the full quadrature.  method='lowT' uses the t^2
    expansions (the general finite-width form in 1D).
    """
    d = state.dimension
    t = state.t
    if method == "numeric":
        if d is Dimension.THREE:
            inv = mu0_minus_t_dmu0(d, t)
        elif d is Dimension.TWO:
            if t == 0.0:
                inv = _kappa_inv_fd(state)
            else:
                inv = mu0_minus_t_dmu0(d, t) \
                    + hf.dsigma2d_iso_dn(state).dsigma_dn
        else:
            inv = _kappa_inv_fd(state)
    elif method == "lowT":
        if d is Dimension.THREE:
            inv = 1.0 + math.pi**2 * t * t / 12.0
        elif d is Dimension.TWO:
            inv = 1.0 + 16.0 * math.sqrt(math.pi) * state.lam \
                * p2(math.cos(state.theta_e)) \
                * (4.0 / 3.0 - math.pi**2 * t * t / 48.0)
        else:
            inv = kappa_inv_1d_general(state)
    else:
        raise DomainError(f"unknown method {method!r}")
    if inv == 0.0:
        raise DomainError("kappa ratio diverges (inv_ratio = 0)")
    return KappaResult(kappa_ratio=1.0 / inv, inv_ratio=inv, method=method)


def kappa_inv_1d_general(state: ReducedState) -> float:
    """Low-T kappa_0/kappa in quasi-1D at arbitrary k_F w.

    1 - pi^2 t^2/12 - (pi^2/4) lam P2 {8 phi - (pi^2/6) t^2
    [1 + 2x - (2x^2 + 3x - 1) phi]},  phi = e^x Gamma(0,x), x = 4 (k_F w)^2.
    """
    if state.dimension is not Dimension.ONE:
        raise DomainError("needs a 1D state")
    x = 4.0 * state.kfw**2
    phi = float(exp_gamma0(x))
    t = state.t
    bracket = 8.0 * phi - (math.pi**2 / 6.0) * t * t \
        * (1.0 + 2.0 * x - (2.0 * x * x + 3.0 * x - 1.0) * phi)
    return 1.0 - math.pi**2 * t * t / 12.0 \
        - (math.pi**2 / 4.0) * state.lam * p2(math.cos(state.theta_e)) * bracket


def kappa_inv_1d_small_kfw(state: ReducedState) -> float:
    """Low-T kappa_0/kappa in quasi-1D, k_F w << 1 logarithmic form."""
    if state.dimension is not Dimension.ONE:
        raise DomainError("needs a 1D state")
    t, kfw = state.t, state.kfw
    lg = EULER_GAMMA + 2.0 * math.log(2.0 * kfw)
    bracket = 8.0 * lg - (lg - 1.0) * (math.pi**2 / 6.0) * t * t
    return 1.0 - math.pi**2 * t * t / 12.0 \
        + (math.pi**2 / 4.0) * state.lam * p2(math.cos(state.theta_e)) * bracket


def kappa_vs_T_peak(state: ReducedState, t_grid) -> dict:
    """Locate the maximum of kappa/kappa_0 over a temperature sweep.

    Returns {'t_peak', 'kappa_peak', 'monotone', 't_grid', 'kappa'}; a
    maximum sitting at a grid endpoint is reported as monotone.
    Parabolic refinement is done on the log-t axis (peaks are broad there).
    """
    from dataclasses import replace

    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 3 or np.any(np.diff(t_grid) <= 0):
        raise DomainError("need an increasing grid of at least 3 points")
    vals = np.empty_like(t_grid)
    for i, t in enumerate(t_grid):
        st = replace(state, t=t, mu0_tilde=mu0_reduced(state.dimension, t))
        vals[i] = kappa_ratio(st, "numeric").kappa_ratio
    i = int(np.argmax(vals))
    if i in (0, len(t_grid) - 1):
        return {"t_peak": float(t_grid[i]), "kappa_peak": float(vals[i]),
                "monotone": True, "t_grid": t_grid, "kappa": vals}
    la, lb, lc = np.log(t_grid[i - 1: i + 2])
    fa, fb, fc = vals[i - 1: i + 2]
    denom = (la - lb) * (la - lc) * (lb - lc)
    a2 = (lc * (fb - fa) + lb * (fa - fc) + la * (fc - fb)) / denom
    a1 = (lc * lc * (fa - fb) + lb * lb * (fc - fa) + la * la * (fb - fc)) / denom
    a0 = fb - a2 * lb * lb - a1 * lb
    if a2 < 0.0:
        lpk = -a1 / (2.0 * a2)
        fpk = a0 - a1 * a1 / (4.0 * a2)
    else:
        lpk, fpk = lb, fb
    return {"t_peak": float(np.exp(lpk)), "kappa_peak": float(fpk),
            "monotone": False, "t_grid": t_grid, "kappa": vals}


def effective_mass(dimension: Dimension, k: float, theta_k: float,
                   state: ReducedState) -> EffectiveMass:
    """Radial and angular inverse effective-mass ratios at (k, theta_k).

    m/m_r* = 1 + (m/hbar^2 k) dSigma/dk = 1 + dSigma~/dk~/(2 k~);
    m/m_theta* = (m/hbar^2 k^2) dSigma/dtheta = dSigma~/dtheta/(2 k~^2).
    """
    if k <= 0:
        raise DomainError("k must be positive")
    if dimension is not state.dimension:
        raise DomainError("dimension mismatch with state")
    if dimension is Dimension.THREE:
        dsdk = float(hf.dsigma3d_radial(state, k)[0]) * p2(math.cos(theta_k))
        s_k = float(hf.sigma3d_radial(state, k)[0])
        dsdth = s_k * (-3.0 * math.cos(theta_k) * math.sin(theta_k))
        return EffectiveMass(1.0 + dsdk / (2.0 * k), dsdth / (2.0 * k * k),
                             k, theta_k)
    if dimension is Dimension.TWO:
        if abs(k - 1.0) < 1e-12:
            dsdk = hf.dsigma2d_iso_dk_kf(state).dsigma_dk
        else:
            h = 1e-4
            dsdk = (hf.sigma2d_iso(k + h, state).sigma
                    - hf.sigma2d_iso(k - h, state).sigma) / (2.0 * h)
        # in 2D theta_k is the in-plane angle phi_k; the anisotropic part
        # carries cos(2 phi), so dSigma/dphi = Sigma_ani(phi=0) * (-2 sin 2 phi)
        ani0 = hf.sigma2d_ani(k, 0.0, state).sigma
        dsdphi = ani0 * (-2.0 * math.sin(2.0 * theta_k))
        return EffectiveMass(1.0 + dsdk / (2.0 * k), dsdphi / (2.0 * k * k),
                             k, theta_k)
    if abs(k - 1.0) > 1e-12:
        raise DomainError("the 1D derivative is anchored at k = k_F")
    dsdk = hf.dsigma1d_dk_kf(state).dsigma_dk
    return EffectiveMass(1.0 + dsdk / 2.0, 0.0, k, theta_k)


def stability_line_3d(t: float, lam_bracket=(1e-6, 20.0)) -> dict:
    """Critical coupling where the radial effective mass at the poles
    changes sign: root of m/m_r*(k_F0, theta=0; lambda, t) = 0.

    Returns {'lambda_c', 'converged', 'note'}; lambda_c -> 1/pi as t -> 0.
    The radial-mass deviation is linear in lambda, so the bracketed
    root-find operates on an exactly linear function of lambda.
    """
    from dataclasses import replace
    state1 = ReducedState(t=t, lam=1.0,
                          mu0_tilde=mu0_reduced(Dimension.THREE, t),
                          kfw=0.0, dimension=Dimension.THREE)
    slope = 0.5 * hf.dsigma3d_dk_kf(0.0, state1).dsigma_dk  # per unit lambda

    f = lambda lam: 1.0 + slope * lam
    lo, hi = lam_bracket
    if f(lo) * f(hi) > 0.0:
        return {"lambda_c": math.inf, "converged": False,
                "note": f"stable for all lambda in [{lo}, {hi}]"}
    lam_c = float(optimize.brentq(f, lo, hi, xtol=1e-6))
    return {"lambda_c": lam_c, "converged": True, "note": ""}


def coulomb_kappa_ratio_2d(r_s: float, t: float) -> float:
    """Hartree-Fock kappa_0/kappa of the 2D spinless Coulomb gas:

    1 + (r_s/pi)(-1 + 0.13 t^2 + (pi^2/32) t^2 ln t);  t = 0 gives the
    limit 1 - r_s/pi.  Low-temperature formula: do not extrapolate far
    above t ~ 1.
    """
    if r_s < 0:
        raise DomainError("r_s must be >= 0")
    if t < 0:
        raise DomainError("t must be >= 0")
    if t == 0.0:
        return 1.0 - r_s / math.pi
    return 1.0 + (r_s / math.pi) * (-1.0 + 0.13 * t * t
                                    + (math.pi**2 / 32.0) * t * t * math.log(t))


def coulomb_peak_t() -> float:
    """Stationary point of the Coulomb kappa_0/kappa temperature dependence:
    0.26 t + (pi^2/32)(2 t ln t + t) = 0."""
    return math.exp(-0.5 * (0.26 * 32.0 / math.pi**2 + 1.0))


def kappa_abs(params, result: KappaResult) -> KappaResult:
    """Attach the physical compressibility (1/(J m^-d)) to a reduced result.

    kappa = (kappa/kappa_0) * kappa_0 with kappa_0 = d/(2 n E_F).
    """
    from .units import fermi_scales

    scales = fermi_scales(params)
    n = params.density_si
    k0 = params.dimension.d / (2.0 * n * scales.e_f)
    from dataclasses import replace as _rep
    return _rep(result, kappa_abs=result.kappa_ratio * k0)
