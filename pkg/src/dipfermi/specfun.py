"""Special functions required by the closed-form expressions.

Each operation has an independent brute-force oracle in the test suite
(series, quadrature of the defining integral, or recurrence).  The two
Meijer-G instances arising from the quasi-1D exchange integral are *not*
implemented generically: only the two fixed-parameter combinations are
needed, and they are defined operationally through the zero-temperature and
t^2-coefficient Fermi-sea integrals of the quasi-1D exchange kernel.
"""

import math

import numpy as np
from scipy import integrate, interpolate, special

from . import DomainError, NumericsError
from .constants import SpecialConstants  # noqa: F401  (re-exported)

_SUPPORTED_S = (0.5, 1.5, 2.5)

# 2*eta(2k) for the Sommerfeld tail of Li_s(-e^x); eta = Dirichlet eta
_TWO_ETA = [2.0 * (1.0 - 2.0 ** (1 - 2 * k)) * float(special.zeta(2 * k))
            for k in range(1, 7)]


def _polylog_series(s: float, x: float) -> float:
    """Li_s(-e^x) = sum_k (-1)^k e^(kx)/k^s, for x well below 0."""
    total = 0.0
    for k in range(1, 400):
        term = (-1.0) ** k * math.exp(k * x) / k**s
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            return total
    raise NumericsError(f"polylog series did not converge at s={s}, x={x}")


def _polylog_quad(s: float, x: float) -> float:
    """Fermi-Dirac integral route: Li_s(-e^x) = -F_(s-1)(x)/Gamma(s).

    The substitution u = v^2 removes the u^(s-2) endpoint behavior:
    F_(s-1)(x) = int u^(s-1)/(e^(u-x)+1) du = 2 int v^(2s-1)/(e^(v^2-x)+1) dv.
    """
    p = 2.0 * s - 1.0

    def f(v):
        return 2.0 * v**p / (np.exp(v * v - x) + 1.0)

    hi = math.sqrt(max(x, 0.0) + 60.0)
    pts = [math.sqrt(x)] if x > 0.0 else None
    val, err = integrate.quad(f, 0.0, hi, points=pts, limit=200,
                              epsabs=1e-14, epsrel=1e-12)
    if err > 1e-8 * max(abs(val), 1e-10):
        raise NumericsError(f"Fermi-Dirac quadrature inaccurate at s={s}, x={x}")
    return -val / math.gamma(s)


def _polylog_sommerfeld(s: float, x: float) -> float:
    """Asymptotic tail: -Li_s(-e^x) ~ x^s/Gamma(s+1) * sum 2 eta(2k) prod/x^2k.

    Exact for half-integer s up to series truncation (the reflection term
    carries cos(pi s) = 0).
    """
    acc = 1.0
    prod = 1.0
    for k, two_eta in enumerate(_TWO_ETA, start=1):
        prod *= (s - (2 * k - 2)) * (s - (2 * k - 1))
        acc += two_eta * prod / x ** (2 * k)
    return -x**s / math.gamma(s + 1.0) * acc


def polylog_negexp(s: float, x: float) -> float:
    """Li_s(-e^x) for half-integer s in {1/2, 3/2, 5/2} and real x.

    Three regimes: alternating series (x < -2), Fermi-Dirac quadrature
    (-2 <= x <= 30), Sommerfeld expansion (x > 30).
    """
    if s not in _SUPPORTED_S:
        raise DomainError(f"polylog_negexp: unsupported order s={s}")
    if not math.isfinite(x):
        raise DomainError("polylog_negexp: x must be finite")
    if x < -2.0:
        return _polylog_series(s, x)
    if x <= 30.0:
        return _polylog_quad(s, x)
    return _polylog_sommerfeld(s, x)


def ellip_K(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention.

    AGM iteration: K(k) = pi / (2 * agm(1, sqrt(1-k^2))).
    """
    if not 0.0 <= k < 1.0:
        raise DomainError("ellip_K requires modulus in [0, 1)")
    a, b = 1.0, math.sqrt(1.0 - k * k)
    while abs(a - b) > 1e-15 * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def ellip_E(k: float) -> float:
    """Complete elliptic integral of the second kind, modulus convention.

    AGM with the c_n sum: E = K * (1 - sum 2^(n-1) c_n^2), c_0 = k.
    """
    if not 0.0 <= k <= 1.0:
        raise DomainError("ellip_E requires modulus in [0, 1]")
    if k == 1.0:
        return 1.0
    a, b, c = 1.0, math.sqrt(1.0 - k * k), k
    csum = 0.5 * c * c
    pow2 = 1.0
    while abs(c) > 1e-16:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        pow2 *= 2.0
        csum += 0.5 * pow2 * c * c
    return math.pi / (2.0 * a) * (1.0 - csum)


def gamma_upper(a: int, x) -> float:
    """Upper incomplete gamma Gamma(a, x) for a in {0, -1} and x > 0.

    Gamma(0, x) = E_1(x); Gamma(-1, x) = e^-x/x - Gamma(0, x).
    """
    if a not in (0, -1):
        raise DomainError("gamma_upper supports a in {0, -1} only")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise DomainError("gamma_upper requires x > 0")
    g0 = special.exp1(x)
    out = g0 if a == 0 else np.exp(-x) / x - g0
    return float(out) if out.ndim == 0 else out


def exp_gamma0(x):
    """e^x * Gamma(0, x) for x > 0, overflow-safe.

    Switches to the asymptotic continued series (1/x)(1 - 1/x + 2/x^2 - ...)
    beyond x = 300 where exp1 underflows.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise DomainError("exp_gamma0 requires x > 0")
    small = x <= 300.0
    out = np.empty_like(x)
    xs = np.where(small, x, 1.0)
    out = np.where(small, np.exp(xs) * special.exp1(xs), 0.0)
    if np.any(~small):
        xl = x[~small] if x.ndim else x
        acc = np.zeros_like(xl)
        term = np.ones_like(xl) / xl
        for n in range(0, 14):
            acc = acc + term
            term = term * (-(n + 1.0)) / xl
        if x.ndim:
            out[~small] = acc
        else:
            out = acc
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Meijer-G instances of the quasi-1D exchange integral
# ---------------------------------------------------------------------------
#
# Variant A is fixed by the zero-temperature Fermi-sea integral of the full
# quasi-1D exchange kernel h(u) = u^2 e^(u^2 x/4) Gamma(0, u^2 x/4):
#
#     G_A(x) = -2 * int_0^1 du u^2 e^(x u^2) Gamma(0, x u^2),
#
# which reproduces the small-width limit (8/3)(gamma - 2/3 + 2 ln(2 k_F w))
# of the self-energy through 4*G_A(x), x = 4 k_F^2 w^2.  Variant B is fixed
# by the t^2-coefficient of the same Fermi-sea integral (Sommerfeld), which
# pins the combination appearing in the finite-temperature bracket:
#
#     G_B(x) = [ (1+2x) e^x Gamma(0,x) - 2 + (3/2) G_A(x) ] / x.

def _meijer_a_quad(x: float) -> float:
    f = lambda u: u * u * float(exp_gamma0(max(x * u * u, 1e-300)))
    knee = 1.0 / math.sqrt(x)
    pts = [knee] if knee < 1.0 else None
    val, err = integrate.quad(f, 0.0, 1.0, points=pts, limit=300,
                              epsabs=1e-14, epsrel=1e-12)
    if err > max(1e-12, 1e-8 * abs(val)):
        raise NumericsError(f"Meijer-G quadrature inaccurate at x={x}")
    return -2.0 * val


class _MeijerCache:
    """Immutable log-grid cache with cubic interpolation, built lazily."""

    LO, HI, N = 1e-7, 1e6, 1600

    def __init__(self):
        self._spline = None

    def value(self, x: float) -> float:
        if not (self.LO <= x <= self.HI):
            return _meijer_a_quad(x)
        if self._spline is None:
            grid = np.logspace(math.log10(self.LO), math.log10(self.HI), self.N)
            vals = [_meijer_a_quad(g) for g in grid]
            self._spline = interpolate.CubicSpline(np.log(grid), vals)
        return float(self._spline(math.log(x)))


_CACHE_A = _MeijerCache()


def meijer_g_2232(variant: str, x: float, exact: bool = False) -> float:
    """The two fixed-parameter Meijer-G instances, defined operationally.

    variant 'A': the t = 0 Fermi-sea integral instance; variant 'B': the
    t^2-coefficient instance, x = 4 k_F^2 w^2 in both.  ``exact`` bypasses
    the interpolation cache.
    """
    if x <= 0.0:
        raise DomainError("meijer_g_2232 requires x > 0")
    if variant == "A":
        return _meijer_a_quad(x) if exact else _CACHE_A.value(x)
    if variant == "B":
        ga = meijer_g_2232("A", x, exact=exact)
        return ((1.0 + 2.0 * x) * float(exp_gamma0(x)) - 2.0 + 1.5 * ga) / x
    raise DomainError(f"unknown Meijer-G variant {variant!r}")
