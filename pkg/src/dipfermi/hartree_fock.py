"""Hartree-Fock self-energies and their momentum/density derivatives.

Arbitrary-temperature adaptive quadratures plus the analytic low-temperature
expansions, in 1D, 2D and 3D.  All values are reduced: sigma in E_F,
dsigma_dk in E_F/k_F0, and density derivatives as n*dSigma/dn in E_F.

Radial quadratures use x = k'/k_F0 and split panels at the integrable
singular points (kernel logarithms, elliptic arguments reaching 1, the
thermal Fermi edge); upper limits are sqrt(mu0 + 40 t), beyond which the
occupation is below 1e-17.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from . import DomainError, NumericsError
from .constants import EULER_GAMMA, ZETA_PRIME_MINUS1, ZETA_PRIME_2
from .potentials import p2
from .specfun import exp_gamma0, meijer_g_2232
from .thermo import mu0_minus_t_dmu0, support_radius
from .units import Dimension, ReducedState


@dataclass(frozen=True)
class SelfEnergyValue:
    """Self-energy (E_F units) with optional derivatives.

    dsigma_dk is in E_F/k_F0; dsigma_dn stores n*dSigma/dn in E_F.  When
    angular_factor_stripped, the angular factor (P2(cos theta) in 3D and in
    the quasi-1D/2D isotropic parts, sin^2(theta_E)cos(2 phi) for the 2D
    anisotropic part) has been divided out and the caller re-applies it.
    """
    sigma: float
    dsigma_dk: float | None = None
    dsigma_dn: float | None = None
    method: str = "numeric"
    angular_factor_stripped: bool = False


def _quad(f, a, b, points=None, rel=1e-10, floor=1e-12, limit=400):
    pts = [p for p in (points or []) if a < p < b]
    val, err = integrate.quad(f, a, b, points=pts or None, limit=limit,
                              epsabs=floor, epsrel=rel)
    if err > max(floor * 10.0, 1e-7 * abs(val)):
        raise NumericsError(
            f"quadrature failed on [{a}, {b}]: value={val}, err={err}")
    return val


def _nf(z):
    z = np.clip(z, -700.0, 700.0)
    return 1.0 / (np.exp(z) + 1.0)


def _wlog(z):
    """e^z/(e^z+1)^2, overflow-free."""
    z = np.clip(z, -500.0, 500.0)
    ez = np.exp(-np.abs(z))
    return ez / (1.0 + ez) ** 2


# ---------------------------------------------------------------------------
# 3D
# ---------------------------------------------------------------------------

def _kernel3d(x):
    """Radial exchange kernel -5/2 x^2 + 3/2 x^4 + 3/4 x (x^2-1)^2 ln|.|."""
    x = np.asarray(x, dtype=float)
    ratio = np.where(x == 1.0, 1.0, np.abs((x - 1.0) / (x + 1.0)))
    out = -2.5 * x * x + 1.5 * x**4 \
        + 0.75 * x * (x * x - 1.0) ** 2 * np.log(np.maximum(ratio, 1e-300))
    return np.where(x == 1.0, -1.0, out)


def _i3(state: ReducedState, ktilde: float, weight: str = "n") -> float:
    """Radial integral of the 3D kernel against the thermal weight.

    weight 'n': occupation; 'dt': d n_F/dt; 'dmu': d n_F/d mu0_tilde.
    """
    t, mu = state.t, state.mu0_tilde
    if t == 0.0:
        if weight != "n":
            raise DomainError("thermal-derivative weights need t > 0")
        hi = math.sqrt(max(mu, 0.0)) / ktilde
        return _quad(_kernel3d, 0.0, hi, points=[1.0])

    hi = (support_radius(t, mu) + 0.3) / ktilde

    def f(x):
        z = (x * x * ktilde * ktilde - mu) / t
        if weight == "n":
            w = _nf(z)
        elif weight == "dt":
            w = z * _wlog(z) / t
        else:
            w = _wlog(z) / t
        return _kernel3d(x) * w

    pts = [1.0, math.sqrt(abs(mu)) / ktilde if mu > 0 else 0.5]
    return _quad(f, 0.0, hi, points=pts, floor=1e-12 * max(1.0, hi))


def sigma3d(k: float, theta_k: float, state: ReducedState,
            method: str = "numeric") -> SelfEnergyValue:
    """3D Hartree-Fock self-energy at reduced momentum k (units of k_F0).

    Sigma = 2 pi lam k^3 P2(cos theta_k) * I(k); purely d-wave in angle.
    The low-T form (k = k_F0 only) is 4 pi lam P2 (-1/3 + pi^2 t^2/16).
    """
    if k <= 0:
        raise DomainError("k must be positive")
    if state.dimension is not Dimension.THREE:
        raise DomainError("sigma3d needs a 3D state")
    ang = p2(math.cos(theta_k))
    if method == "numeric":
        val = 2.0 * math.pi * state.lam * k**3 * ang * _i3(state, k)
        return SelfEnergyValue(sigma=val, method="numeric")
    if method == "lowT":
        if abs(k - 1.0) > 1e-12:
            raise DomainError("the low-T expansion is anchored at k = k_F0")
        val = 4.0 * math.pi * state.lam * ang \
            * (-1.0 / 3.0 + math.pi**2 * state.t**2 / 16.0)
        return SelfEnergyValue(sigma=val, method="lowT")
    raise DomainError(f"unknown method {method!r}")


def dsigma3d_dk_kf(theta_k: float, state: ReducedState,
                   method: str = "numeric") -> SelfEnergyValue:
    """d Sigma_3D/dk at the unperturbed Fermi surface, in E_F/k_F0.

    Numeric route uses the exact scaling identity
    (3 - 2 t d/dt - 2 mu0 d/dmu0) Sigma(k_F0) with analytic thermal-weight
    quadratures (no finite differences in t).
    """
    if state.dimension is not Dimension.THREE:
        raise DomainError("dsigma3d_dk_kf needs a 3D state")
    ang = p2(math.cos(theta_k))
    t = state.t
    if method == "numeric":
        if t == 0.0:
            bracket = -1.0  # 3*I(0) - 2*mu*dI/dmu = -2 + 1
        else:
            bracket = (3.0 * _i3(state, 1.0, "n")
                       - 2.0 * t * _i3(state, 1.0, "dt")
                       - 2.0 * state.mu0_tilde * _i3(state, 1.0, "dmu"))
        return SelfEnergyValue(sigma=float("nan"), method="numeric",
                               dsigma_dk=2.0 * math.pi * state.lam * ang * bracket)
    if method == "lowT":
        tln = t * t * math.log(t) if t > 0 else 0.0
        bracket = -(1.0 + (math.pi**2 / 4.0) * tln
                    + (0.375 + 3.0 * ZETA_PRIME_MINUS1
                       + 0.25 * math.log(math.pi)) * math.pi**2 * t * t)
        return SelfEnergyValue(sigma=float("nan"), method="lowT",
                               dsigma_dk=2.0 * math.pi * state.lam * ang * bracket)
    raise DomainError(f"unknown method {method!r}")


def sigma3d_radial(state: ReducedState, y):
    """Stripped radial profile S(y) = Sigma(y k_F0)/(E_F P2): 2 pi lam y^3 I(y)."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    vals = np.array([2.0 * math.pi * state.lam * yi**3 * _i3(state, yi)
                     for yi in y])
    return vals


def dsigma3d_radial(state: ReducedState, y):
    """d S/dy of the stripped radial profile, by the scaling identity.

    dS/dy = (1/y) (3 - 2 t d/dt - 2 mu d/dmu) S(y), valid at any y.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    t, mu = state.t, state.mu0_tilde
    out = np.empty_like(y)
    for i, yi in enumerate(y):
        br = (3.0 * _i3(state, yi, "n") - 2.0 * t * _i3(state, yi, "dt")
              - 2.0 * mu * _i3(state, yi, "dmu"))
        out[i] = 2.0 * math.pi * state.lam * yi**2 * br
    return out


# ---------------------------------------------------------------------------
# 2D
# ---------------------------------------------------------------------------

def _m_ell(x, ktilde=1.0):
    """Squared elliptic modulus (2 sqrt(x ktilde)/(ktilde + x))^2, clipped."""
    x = np.asarray(x, dtype=float)
    m = 4.0 * x * ktilde / (ktilde + x) ** 2
    return np.minimum(m, 1.0 - 1e-15)


def _g2_iso(state: ReducedState, ktilde: float = 1.0, weight: str = "n") -> float:
    """int x dx W(x) (ktilde + x) E(m(x, ktilde)) with thermal weight W."""
    t, mu = state.t, state.mu0_tilde
    if t == 0.0:
        if weight != "n":
            raise DomainError("thermal-derivative weights need t > 0")
        hi = math.sqrt(max(mu, 0.0))
        f = lambda x: x * (ktilde + x) * special.ellipe(_m_ell(x, ktilde))
        return _quad(f, 0.0, hi, points=[ktilde])
    hi = support_radius(t, mu) + 0.3

    def f(x):
        z = (x * x - mu) / t
        w = _nf(z) if weight == "n" else _wlog(z) / t
        return x * (ktilde + x) * special.ellipe(_m_ell(x, ktilde)) * w

    pts = [ktilde, math.sqrt(abs(mu)) if mu > 0 else 0.5]
    return _quad(f, 0.0, hi, points=pts)


def _d2_iso(state: ReducedState) -> float:
    """(1/2) int x dx n_F [(1+x)E + (1-x)K] at k = k_F."""
    t, mu = state.t, state.mu0_tilde

    def kern(x):
        m = _m_ell(x)
        return 0.5 * x * ((1.0 + x) * special.ellipe(m)
                          + (1.0 - x) * special.ellipk(m))

    if t == 0.0:
        return _quad(kern, 0.0, math.sqrt(max(mu, 0.0)), points=[1.0])
    hi = support_radius(t, mu) + 0.3
    f = lambda x: kern(x) * _nf((x * x - mu) / t)
    pts = [1.0, math.sqrt(abs(mu)) if mu > 0 else 0.5]
    return _quad(f, 0.0, hi, points=pts)


def sigma2d_iso(k: float, state: ReducedState,
                method: str = "numeric") -> SelfEnergyValue:
    """Isotropic part of the 2D self-energy at reduced momentum k.

    Sigma = 16 sqrt(pi) lam P2(cos theta_E) * G(k, t); low-T anchor at
    k = k_F: 16 sqrt(pi) lam P2 (8/9 + pi^2 t^2/24).
    """
    if k <= 0:
        raise DomainError("k must be positive")
    if state.dimension is not Dimension.TWO:
        raise DomainError("sigma2d_iso needs a 2D state")
    pref = 16.0 * math.sqrt(math.pi) * state.lam * p2(math.cos(state.theta_e))
    if method == "numeric":
        return SelfEnergyValue(sigma=pref * _g2_iso(state, k), method="numeric")
    if method == "lowT":
        if abs(k - 1.0) > 1e-12:
            raise DomainError("the low-T expansion is anchored at k = k_F")
        return SelfEnergyValue(
            sigma=pref * (8.0 / 9.0 + math.pi**2 * state.t**2 / 24.0),
            method="lowT")
    raise DomainError(f"unknown method {method!r}")


def dsigma2d_iso_dk_kf(state: ReducedState,
                       method: str = "numeric") -> SelfEnergyValue:
    """d Sigma_2D^iso/dk at k_F in E_F/k_F0.

    Low-T: 16 sqrt(pi) lam P2 [2/3 + (pi^2/48) t^2 (1 + ln(pi/4)
    + 12 zeta'(-1)) + (pi^2/48) t^2 ln t].
    """
    if state.dimension is not Dimension.TWO:
        raise DomainError("dsigma2d_iso_dk_kf needs a 2D state")
    pref = 16.0 * math.sqrt(math.pi) * state.lam * p2(math.cos(state.theta_e))
    t = state.t
    if method == "numeric":
        return SelfEnergyValue(sigma=float("nan"), method="numeric",
                               dsigma_dk=pref * _d2_iso(state))
    if method == "lowT":
        tln = t * t * math.log(t) if t > 0 else 0.0
        val = (2.0 / 3.0
               + (math.pi**2 / 48.0) * t * t
               * (1.0 + math.log(math.pi / 4.0) + 12.0 * ZETA_PRIME_MINUS1)
               + (math.pi**2 / 48.0) * tln)
        return SelfEnergyValue(sigma=float("nan"), method="lowT",
                               dsigma_dk=pref * val)
    raise DomainError(f"unknown method {method!r}")


def dsigma2d_iso_dn(state: ReducedState) -> SelfEnergyValue:
    """n * dSigma_2D^iso/dn in E_F, at fixed temperature.

    n dSig/dn = (1/2) k_F dSig/dk + 16 sqrt(pi) lam P2
    (mu0 - t dmu0/dt) int dx W(x) x (1+x) E(2 sqrt(x)/(1+x)).
    """
    if state.dimension is not Dimension.TWO:
        raise DomainError("dsigma2d_iso_dn needs a 2D state")
    if state.t == 0.0:
        raise DomainError("the thermal term needs t > 0; use the t->0 limit")
    pref = 16.0 * math.sqrt(math.pi) * state.lam * p2(math.cos(state.theta_e))
    thermal = mu0_minus_t_dmu0(Dimension.TWO, state.t) \
        * _g2_iso(state, 1.0, weight="w")
    val = pref * (0.5 * _d2_iso(state) + thermal)
    return SelfEnergyValue(sigma=float("nan"), dsigma_dn=val, method="numeric")


def sigma2d_ani(k: float, phi_k: float, state: ReducedState,
                method: str = "numeric") -> SelfEnergyValue:
    """Anisotropic part of the 2D self-energy.

    Proportional to sin^2(theta_E) cos(2 phi_k); low-T bracket at k_F is
    (8/5 - pi^2 t^2/8).
    """
    if k <= 0:
        raise DomainError("k must be positive")
    if state.dimension is not Dimension.TWO:
        raise DomainError("sigma2d_ani needs a 2D state")
    ang = math.sin(state.theta_e) ** 2 * math.cos(2.0 * phi_k)
    pref = -(8.0 * math.sqrt(math.pi) / 3.0) * state.lam * ang
    t, mu = state.t, state.mu0_tilde
    if method == "lowT":
        if abs(k - 1.0) > 1e-12:
            raise DomainError("the low-T expansion is anchored at k = k_F")
        return SelfEnergyValue(sigma=pref * (1.6 - math.pi**2 * t * t / 8.0),
                               method="lowT")
    if method != "numeric":
        raise DomainError(f"unknown method {method!r}")

    def kern(x):
        m = _m_ell(x)
        return x * (1.0 + x) * ((2.0 - x * x) * special.ellipe(m)
                                + (1.0 - x) ** 2 * special.ellipk(m))

    if t == 0.0:
        val = _quad(kern, 0.0, math.sqrt(max(mu, 0.0)) / k, points=[1.0])
    else:
        hi = (support_radius(t, mu) + 0.3) / k
        f = lambda x: kern(x) * _nf((x * x * k * k - mu) / t)
        pts = [1.0, math.sqrt(abs(mu)) / k if mu > 0 else 0.5]
        val = _quad(f, 0.0, hi, points=pts)
    return SelfEnergyValue(sigma=pref * k**3 * val, method="numeric")


# ---------------------------------------------------------------------------
# quasi-1D
# ---------------------------------------------------------------------------

def _h1d(u, beta: float):
    """Full quasi-1D exchange kernel u^2 e^(u^2 beta) Gamma(0, u^2 beta),
    beta = (k_F w)^2, u = q/k_F >= 0."""
    u = np.asarray(u, dtype=float)
    y = np.maximum(u * u * beta, 1e-300)
    return np.where(u == 0.0, 0.0, u * u * np.asarray(exp_gamma0(y)))


def _i1d(state: ReducedState, weight: str = "n") -> float:
    """int dx W(x) h1d(|1 - x|), the Fermi-sea exchange integral at k_F."""
    t, mu, beta = state.t, state.mu0_tilde, state.kfw**2
    if t == 0.0:
        if weight != "n":
            raise DomainError("thermal-derivative weights need t > 0")
        lo, hi = -math.sqrt(max(mu, 0.0)), math.sqrt(max(mu, 0.0))
        return _quad(lambda x: _h1d(abs(1.0 - x), beta), lo, hi, points=[1.0])
    r = support_radius(t, mu) + 0.3
    edge = math.sqrt(abs(mu)) if mu > 0 else 0.5

    def f(x):
        z = (x * x - mu) / t
        if weight == "n":
            w = _nf(z)
        else:  # 'dk': derivative of n_F w.r.t. x, for dSigma/dk
            w = -2.0 * x * _wlog(z) / t
        return _h1d(abs(1.0 - x), beta) * w

    return _quad(f, -r, r, points=[-edge, edge, 1.0])


def sigma1d_kf(state: ReducedState, form: str = "general") -> SelfEnergyValue:
    """Quasi-1D self-energy at the Fermi point, prefactor
    (pi^2/2) lam P2(cos theta_E) E_F.

    form='small_kfw': the k_F w << 1 closed form;
    form='general':   the low-T form valid at any k_F w (Meijer-G instance
                      A plus the t^2 bracket 1 - (1+x) e^x Gamma(0,x));
    form='numeric':   direct quadrature of the Fermi-sea integral with the
                      full quasi-1D interaction, any temperature.
    """
    if state.dimension is not Dimension.ONE:
        raise DomainError("sigma1d_kf needs a 1D state")
    pref = 0.5 * math.pi**2 * state.lam * p2(math.cos(state.theta_e))
    t, kfw = state.t, state.kfw
    x4 = 4.0 * kfw * kfw
    if form == "small_kfw":
        val = (8.0 / 3.0) * (EULER_GAMMA - 2.0 / 3.0 + 2.0 * math.log(2.0 * kfw)) \
            + (EULER_GAMMA + 1.0 + 2.0 * math.log(2.0 * kfw)) \
            * (math.pi**2 / 6.0) * t * t
        return SelfEnergyValue(sigma=pref * val, method="lowT")
    if form == "general":
        phi = float(exp_gamma0(x4))
        val = 4.0 * meijer_g_2232("A", x4) \
            + (math.pi**2 / 6.0) * t * t * (1.0 - (1.0 + x4) * phi)
        return SelfEnergyValue(sigma=pref * val, method="lowT")
    if form == "numeric":
        return SelfEnergyValue(sigma=-pref * _i1d(state), method="numeric")
    raise DomainError(f"unknown form {form!r}")


def dsigma1d_dk_kf(state: ReducedState,
                   method: str = "numeric") -> SelfEnergyValue:
    """d Sigma_1D/dk at k_F, prefactor (pi^2/2) lam P2(cos theta_E) E_F/k_F.

    Low-T bracket: -4 e^x Gamma(0,x) + (pi^2/12) t^2 [gamma - 12 zeta'(2)/pi^2
    + 8 beta - ln beta - (1 + 5x + 2x^2) e^x Gamma(0,x)] - (pi^2/6) t^2 ln t,
    with beta = (k_F w)^2 and x = 4 beta.
    """
    if state.dimension is not Dimension.ONE:
        raise DomainError("dsigma1d_dk_kf needs a 1D state")
    pref = 0.5 * math.pi**2 * state.lam * p2(math.cos(state.theta_e))
    t, kfw = state.t, state.kfw
    beta = kfw * kfw
    if method == "numeric":
        if t == 0.0:
            val = -float(_h1d(2.0, beta))   # = -4 e^x Gamma(0,x)
        else:
            val = -_i1d(state, weight="dk")
        return SelfEnergyValue(sigma=float("nan"), dsigma_dk=pref * val,
                               method="numeric")
    if method == "lowT":
        x4 = 4.0 * beta
        phi = float(exp_gamma0(x4))
        tln = t * t * math.log(t) if t > 0 else 0.0
        val = (-4.0 * phi
               + (math.pi**2 / 12.0) * t * t
               * (EULER_GAMMA - 12.0 * ZETA_PRIME_2 / math.pi**2
                  + 8.0 * beta - math.log(beta)
                  - (1.0 + 5.0 * x4 + 2.0 * x4 * x4) * phi)
               - (math.pi**2 / 6.0) * tln)
        return SelfEnergyValue(sigma=float("nan"), dsigma_dk=pref * val,
                               method="lowT")
    raise DomainError(f"unknown method {method!r}")
