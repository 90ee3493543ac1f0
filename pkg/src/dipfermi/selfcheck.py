"""Built-in verification suite: limit anchors, oracle comparisons, and
expansion-residual scaling, each with an explicit margin.

Every reference value here is recomputed from an independent route (series,
quadrature of a defining integral, finite differences), never read back
from the constants table being checked, so a corrupted table fails loudly.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import constants as cn
from . import specfun, thermo, potentials, hartree_fock as hf, observables
from .units import Dimension, ReducedState


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    margin: float | None = None   # tolerance / |error|; > 1 means headroom


def _item(name, err, tol):
    err = abs(err)
    return CheckItem(name=name, passed=err <= tol,
                     margin=(tol / err if err > 0 else math.inf))


def run(tighten: float = 1.0) -> list:
    """Run the suite; ``tighten`` divides every tolerance."""
    out = []
    tt = float(tighten)

    # frozen transcendental constants vs independent evaluations
    out.append(_item("zeta_prime_2 vs Euler-Maclaurin reference",
                     cn.ZETA_PRIME_2 - cn.zeta_prime_2_reference(),
                     1e-12 / tt))
    out.append(_item("zeta_prime_minus1 vs functional-equation reference",
                     cn.ZETA_PRIME_MINUS1 - cn.zeta_prime_minus1_reference(),
                     1e-12 / tt))

    # polylog regime overlaps
    for s in (0.5, 1.5, 2.5):
        a = specfun._polylog_series(s, -2.0)
        b = specfun._polylog_quad(s, -2.0)
        c = specfun._polylog_quad(s, 30.0)
        d = specfun._polylog_sommerfeld(s, 30.0)
        out.append(_item(f"polylog s={s} series/quad overlap at x=-2",
                         (a - b) / b, 1e-10 / tt))
        out.append(_item(f"polylog s={s} quad/Sommerfeld overlap at x=30",
                         (c - d) / d, 1e-10 / tt))

    # elliptic AGM vs defining-integral quadrature
    k = 0.5
    kq, _ = integrate.quad(lambda p: 1.0 / math.sqrt(1 - k * k * math.sin(p) ** 2),
                           0.0, math.pi / 2, epsabs=1e-14)
    eq, _ = integrate.quad(lambda p: math.sqrt(1 - k * k * math.sin(p) ** 2),
                           0.0, math.pi / 2, epsabs=1e-14)
    out.append(_item("ellip_K(0.5) vs quadrature",
                     specfun.ellip_K(k) - kq, 1e-12 / tt))
    out.append(_item("ellip_E(0.5) vs quadrature",
                     specfun.ellip_E(k) - eq, 1e-12 / tt))

    # zero-temperature kernel anchors
    st3 = ReducedState(t=0.0, lam=0.1, mu0_tilde=1.0, kfw=0.0,
                       dimension=Dimension.THREE)
    out.append(_item("3D exchange anchor -1/3",
                     hf.sigma3d(1.0, 0.0, st3).sigma
                     / (4.0 * math.pi * 0.1) + 1.0 / 3.0, 1e-9 / tt))
    st2 = ReducedState(t=0.0, lam=0.1, mu0_tilde=1.0, kfw=0.1,
                       dimension=Dimension.TWO)
    pref = 16.0 * math.sqrt(math.pi) * 0.1
    out.append(_item("2D isotropic anchor 8/9",
                     hf.sigma2d_iso(1.0, st2).sigma / pref - 8.0 / 9.0,
                     1e-9 / tt))
    out.append(_item("2D slope anchor 2/3",
                     hf.dsigma2d_iso_dk_kf(st2).dsigma_dk / pref - 2.0 / 3.0,
                     1e-9 / tt))
    st2a = ReducedState(t=0.0, lam=0.1, mu0_tilde=1.0, kfw=0.1,
                        dimension=Dimension.TWO, theta_e=0.3)
    ani = hf.sigma2d_ani(1.0, 0.0, st2a).sigma \
        / (-(8.0 * math.sqrt(math.pi) / 3.0) * 0.1 * math.sin(0.3) ** 2)
    out.append(_item("2D anisotropic anchor 8/5", ani - 1.6, 1e-9 / tt))

    # quasi-1D consistency: small-width closed form vs Fermi-sea instance
    st1 = ReducedState(t=0.0, lam=0.1, mu0_tilde=1.0, kfw=1e-3,
                       dimension=Dimension.ONE, theta_e=math.pi / 2)
    a = hf.sigma1d_kf(st1, "general").sigma
    b = hf.sigma1d_kf(st1, "small_kfw").sigma
    out.append(_item("1D Fermi-sea vs small-width form at kfw=1e-3",
                     (a - b) / b, 1e-4 / tt))

    # ideal-gas density closure
    for dim in Dimension:
        t = 0.5
        mu = thermo.mu0_reduced(dim, t)
        out.append(_item(f"density closure d={dim.d}, t={t}",
                         thermo.density_closure(dim, t, mu) - 1.0,
                         1e-8 / tt))

    # potentials scale linearly in lambda
    v1 = potentials.v2d_q(0.3, 0.1, 0.0, 0.2, 0.05)
    v2 = potentials.v2d_q(0.3, 0.1, 0.0, 0.2, 0.10)
    out.append(_item("potential linear in lambda", v2 / v1 - 2.0, 1e-14 / tt))

    # low-T residual scaling, 2D self-energy pair
    res = {}
    for t in (0.04, 0.02):
        st = ReducedState(t=t, lam=0.1,
                          mu0_tilde=thermo.mu0_reduced(Dimension.TWO, t),
                          kfw=0.1, dimension=Dimension.TWO)
        res[t] = hf.sigma2d_iso(1.0, st).sigma \
            - hf.sigma2d_iso(1.0, st, "lowT").sigma
    ratio = abs(res[0.04] / res[0.02])
    out.append(CheckItem("2D low-T residual scaling ratio >= 2^3.5",
                         ratio >= 2.0 ** 3.5 / tt, ratio / 2.0 ** 3.5))

    # 2D kappa: analytic density-derivative path vs finite differences
    st = ReducedState(t=0.2, lam=0.1,
                      mu0_tilde=thermo.mu0_reduced(Dimension.TWO, 0.2),
                      kfw=0.1, dimension=Dimension.TWO)
    eq = observables.kappa_ratio(st, "numeric").inv_ratio
    fd = observables._kappa_inv_fd(st)
    out.append(_item("2D kappa chain rule vs finite differences",
                     (eq - fd) / fd, 1e-6 / tt))
    return out
