"""Collective-mode dispersion and damping in uniform 1D/2D/3D.

The response functions are evaluated with the -i0 prescription that makes
Im chi >= 0 (for x > s the square root sqrt(s^2 - x^2 - i0) is
-i sqrt(x^2 - s^2)); damping rates are reported as positive decay rates.

3D: the chi_(ll',mm') block couples the s-wave and longitudinal p-wave
channels.  The Hartree-Fock single-particle energy enters both the thermal
factor and the velocity factor g(k, theta_q); self-energies are evaluated
at the radially shifted argument Sigma0(k) = Sigma(k - k_F + k_F0) around
the unperturbed Fermi surface.  The azimuthal integral is carried out in
closed form (the resonance denominator is affine in cos phi), leaving an
adaptive 2D (k, cos theta_k) quadrature with explicit treatment of the
sqrt-type resonance boundaries (and of the axial theta_q = 0 case, where
the boundary degenerates to a simple pole).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, interpolate, optimize

from . import DomainError, NumericsError
from .potentials import p2
from .thermo import mu0_reduced, support_radius
from .units import Dimension, ReducedState
from . import hartree_fock as hf

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ModeSolution:
    v0_over_vf: float
    damping_over_qvf: float
    theta_q: float
    converged: bool
    overdamped_flag: bool


@dataclass(frozen=True)
class Chi3dBlock:
    chi_0000: complex
    chi_1000: complex
    chi_1100: complex
    s: float
    theta_q: float


def _wlog(z):
    z = np.clip(z, -500.0, 500.0)
    ez = np.exp(-np.abs(z))
    return ez / (1.0 + ez) ** 2


# ---------------------------------------------------------------------------
# 2D and 1D response functions (reduced: chi * E_F / k_F^d)
# ---------------------------------------------------------------------------

def _fermi_shell_points(t, mu, lo, hi):
    pts = []
    for k in (-25.0, -8.0, -2.0, 0.0, 2.0, 8.0, 25.0):
        v = mu + k * t
        if v > 1e-12:
            p = math.sqrt(v)
            if lo < p < hi:
                pts.append(p)
    return sorted(set(pts))


def chi2d(s: float, state: ReducedState) -> complex:
    """Long-wavelength 2D particle-hole response at mode speed s = v0/v_F.

    chi~(s) = (1/2 pi) int x dx W(x) [s/sqrt(s^2 - x^2 - i0) - 1], with
    W = -dn_F/d(x^2/E_F); returns chi * E_F/k_F^2.  Im chi >= 0.

    The 1/sqrt endpoint is handled with algebraic-weight (QAWS) panels; the
    thermal spike at the Fermi surface gets explicit break points.
    """
    if s <= 0:
        raise DomainError("mode speed s must be positive")
    if state.t <= 0:
        raise DomainError("chi2d requires t > 0")
    t, mu = state.t, state.mu0_tilde
    xmax = support_radius(t, mu, 45.0) + 0.5

    def w(x):
        return _wlog((x * x - mu) / t) / t

    # int_0^inf x W dx = n_F(0)/2 exactly
    tail = 0.5 / (math.exp(min(-mu / t, 500.0)) + 1.0)

    shell = _fermi_shell_points(t, mu, 0.0, max(xmax, s))

    # x = s sin(psi) removes the 1/sqrt(s^2-x^2) endpoint exactly
    hi_psi = 0.5 * math.pi if s <= xmax else math.asin(xmax / s)
    psi_pts = [math.asin(p / s) for p in shell if p < s * math.sin(hi_psi)]
    re_res, err = integrate.quad(
        lambda psi: math.sin(psi) * w(s * math.sin(psi)),
        0.0, hi_psi, points=psi_pts or None, limit=400,
        epsabs=1e-14, epsrel=1e-10)
    re = (s * s * re_res - tail) / TWO_PI

    im = 0.0
    if xmax > s:
        psi_max = math.acosh(xmax / s)
        psi_pts = [math.acosh(p / s) for p in shell if s < p < xmax]
        im_res, err = integrate.quad(
            lambda psi: math.cosh(psi) * w(s * math.cosh(psi)),
            0.0, psi_max, points=psi_pts or None, limit=400,
            epsabs=1e-14, epsrel=1e-10)
        im = s * s * im_res / TWO_PI
    return complex(re, im)


def chi1d(s: float, state: ReducedState) -> complex:
    """Long-wavelength 1D response, chi * E_F/k_F; Im chi >= 0.

    (1/2 pi) int dx W(x) [s/(s - x + i0-bar) - 1]; the principal value is
    taken by symmetric subtraction around the pole at x = s.
    """
    if s <= 0:
        raise DomainError("mode speed s must be positive")
    if state.t <= 0:
        raise DomainError("chi1d requires t > 0")
    t, mu = state.t, state.mu0_tilde
    r = support_radius(t, mu, 45.0) + 0.5

    def w(x):
        return _wlog((x * x - mu) / t) / t

    shell = _fermi_shell_points(t, mu, 0.0, r)
    norm, _ = integrate.quad(w, -r, r, limit=300,
                             points=[q for p in shell for q in (-p, p)],
                             epsabs=1e-13, epsrel=1e-11)
    # PV int W(x)/(s-x) dx = int_0^R [W(s-u) - W(s+u)]/u du
    big = max(r + abs(s), 2.0 * abs(s)) + 1.0

    def sym(u):
        if u == 0.0:
            return 0.0
        return (w(s - u) - w(s + u)) / u

    upts = sorted({abs(s - p) for p in shell} | {abs(s + p) for p in shell})
    pv, _ = integrate.quad(sym, 0.0, big, limit=400,
                           points=[u for u in upts if 0.0 < u < big],
                           epsabs=1e-13, epsrel=1e-10)
    re = (s * pv - norm) / TWO_PI
    im = 0.5 * s * w(s)
    return complex(re, im)


def coupling_2d(state: ReducedState) -> float:
    """V_2D(q=0) * k_F^2/E_F = (64 pi^2/3) lam2d P2(cos theta_E)/kfw."""
    return 64.0 * math.pi**2 / 3.0 * state.lam \
        * p2(math.cos(state.theta_e)) / state.kfw


def coupling_1d(state: ReducedState) -> float:
    """V_1D(q=0) * k_F/E_F = -pi^3 lam1d P2(cos theta_E)/(3 kfw^2)."""
    return -math.pi**3 * state.lam * p2(math.cos(state.theta_e)) \
        / (3.0 * state.kfw**2)


def v0_limit_2d(state: ReducedState) -> float:
    """Low-T analytic zero-sound speed sqrt(2 d^2 m/(3 sqrt(pi) w hbar^2)),
    i.e. sqrt(V~/(8 pi)) in reduced form (valid for strong coupling)."""
    return math.sqrt(coupling_2d(state) / (8.0 * math.pi))


def v0_limit_1d(state: ReducedState) -> float:
    """Low-T analytic 1D speed sqrt(d^2 m/(6 pi w^2 hbar^2 k_F)) =
    sqrt(V~/(2 pi)) in reduced form."""
    return math.sqrt(coupling_1d(state) / TWO_PI)


def _solve_scalar(chi, vred: float, state: ReducedState, theta_q: float,
                  s_max: float = 10.0) -> ModeSolution:
    """Root of Re[1 - V chi(s)] = 0 scanned over s in (1, s_max]."""
    if vred <= 0.0:
        return ModeSolution(math.nan, math.nan, theta_q, False, True)

    def re_d(s):
        return 1.0 - vred * chi(s, state).real

    grid = 1.0 + np.geomspace(1e-6, s_max - 1.0, 400)
    vals = np.array([re_d(s) for s in grid])
    best = None
    for i in range(len(grid) - 1):
        if not (np.isfinite(vals[i]) and np.isfinite(vals[i + 1])
                and vals[i] * vals[i + 1] < 0.0):
            continue
        root = optimize.brentq(re_d, grid[i], grid[i + 1],
                               xtol=1e-13, rtol=8.9e-16)
        h = max(1e-6 * root, 1e-9)
        dre = (re_d(root + h) - re_d(root - h)) / (2.0 * h)
        gamma = vred * chi(root, state).imag / dre if dre != 0.0 else math.inf
        over = not math.isfinite(gamma) or gamma < -1e-9 or gamma / root > 0.5
        sol = ModeSolution(float(root), float(max(gamma, 0.0)), theta_q,
                           True, over)
        if not over:
            return sol       # first propagating root
        if best is None:
            best = sol       # remember the damped crossing
    if best is not None:
        return best
    return ModeSolution(math.nan, math.nan, theta_q, False, True)


def solve_zerosound_2d(state: ReducedState, s_max: float = 10.0) -> ModeSolution:
    """Zero sound of the 2D monolayer: root of 1 - V_2D(0) chi(s) = 0.

    Perpendicular dipoles (theta_e = 0) are the intended geometry.
    """
    if state.dimension is not Dimension.TWO:
        raise DomainError("needs a 2D state")
    return _solve_scalar(chi2d, coupling_2d(state), state, math.nan, s_max)


def solve_zerosound_1d(state: ReducedState, s_max: float = 20.0) -> ModeSolution:
    """Zero sound of the quasi-1D tube: root of 1 - V_1D(0) chi(s) = 0."""
    if state.dimension is not Dimension.ONE:
        raise DomainError("needs a 1D state")
    return _solve_scalar(chi1d, coupling_1d(state), state, math.nan, s_max)


# ---------------------------------------------------------------------------
# 3D block
# ---------------------------------------------------------------------------

def landau_params(lam3d: float, theta_q: float = 0.0) -> dict:
    """Relevant Landau parameters of the dipolar interaction.

    f_00,0 = 2^6 pi^4 lam P2, f_11,0 = (3/5) 2^5 pi^4 lam P2.  The P2
    argument is taken as cos(theta_q), the direction of momentum transfer:
    this is the single place where that convention choice lives.
    """
    if lam3d < 0:
        raise DomainError("lambda must be >= 0")
    p = p2(math.cos(theta_q))
    return {"f00_0": 64.0 * math.pi**4 * lam3d * p,
            "f11_0": 0.6 * 32.0 * math.pi**4 * lam3d * p}


class _SigmaTables:
    """Radial profile S(y) = Sigma(y k_F0)/(E_F P2) with derivative splines.

    One vector-valued cubic spline carries (S, S', S''); x_F(c) is the
    first-order distorted Fermi radius used in the shifted-argument
    convention Sigma0(k) = Sigma(k - k_F + k_F0).
    """

    def __init__(self, state: ReducedState, y_lo: float, y_hi: float):
        self.state = state
        self.y_lo, self.y_hi = y_lo, y_hi
        self.rt = math.sqrt(max(state.mu0_tilde, 1e-12))
        if state.lam == 0.0:
            self.s1 = 0.0
            self._spl = None
            return
        grid = np.linspace(max(y_lo, 1e-3), y_hi, 90)
        svals = hf.sigma3d_radial(state, grid)
        dvals = hf.dsigma3d_radial(state, grid)
        d2vals = interpolate.CubicSpline(grid, dvals).derivative()(grid)
        self._spl = interpolate.CubicSpline(
            grid, np.stack([svals, dvals, d2vals], axis=1))
        self.s1 = float(interpolate.CubicSpline(grid, svals)(1.0))

    def profile(self, y):
        """(S, S', S'') at clipped argument y (clipping only matters where
        the thermal weight has already vanished)."""
        if self._spl is None:
            z = np.zeros(np.shape(y))
            return z, z, z
        v = self._spl(np.clip(y, self.y_lo, self.y_hi))
        return v[..., 0], v[..., 1], v[..., 2]

    def xf(self, c):
        """First-order distorted Fermi radius along cos(theta_k) = c."""
        if self._spl is None:
            return np.broadcast_to(self.rt, np.shape(c)).astype(float)
        return self.rt - self.s1 * p2(c) / (2.0 * self.rt)

    def dxf_dc(self, c):
        return -self.s1 * 3.0 * np.asarray(c) / (2.0 * self.rt)


@lru_cache(maxsize=8)
def _tables(state: ReducedState):
    t, mu = state.t, state.mu0_tilde
    pad = 0.6 * max(state.lam, 0.05)
    x_hi = math.sqrt(mu + 45.0 * t + pad) + 0.05
    x_lo_sq = mu - 45.0 * t - pad
    x_lo = math.sqrt(x_lo_sq) if x_lo_sq > 1e-6 else 0.0
    # the spline is only evaluated at y = x - x_F(c) + 1 with x inside the
    # thermal shell; x_F stays within sqrt(mu) +- O(lam)
    rt = math.sqrt(max(mu, 1e-6))
    dxf = 3.0 * state.lam + 0.05
    y_lo = max(x_lo - rt - dxf + 1.0, 0.05)
    y_hi = x_hi - rt + dxf + 1.0
    tab = _SigmaTables(state, y_lo, y_hi)
    return tab, x_lo, x_hi


_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)


class _CKernel:
    """Geometry of the inner cos(theta_k) integral at fixed radial x.

    Computes the resonance amplitude decomposition x*g = A(c) + B(c) cos(phi)
    together with d/dc of A and B (for Newton root polishing), the thermal
    weight, and the q-projection coefficients entering the Y products.
    """

    def __init__(self, x, tab, theta_q, t, mu):
        self.x, self.tab, self.t, self.mu = x, tab, t, mu
        self.cq, self.sq_q = math.cos(theta_q), math.sin(theta_q)

    def geometry(self, c, derivs=False):
        x, tab = self.x, self.tab
        c = np.asarray(c, dtype=float)
        sq = np.sqrt(np.maximum(1.0 - c * c, 1e-30))
        y = x - tab.xf(c) + 1.0
        s0, ds0, d2s0 = tab.profile(y)
        p2c = p2(c)
        a_r = (2.0 * x + ds0 * p2c) / (2.0 * x)
        b_th = -3.0 * c * sq * s0 / (2.0 * x * x)
        a_coef = c * self.cq * a_r - sq * self.cq * b_th
        b_coef = sq * self.sq_q * a_r + c * self.sq_q * b_th
        out = {"A": x * a_coef, "B": x * b_coef,
               "eps": x * x + s0 * p2c, "sq": sq}
        if derivs:
            dy = -tab.dxf_dc(c)
            da_r = (d2s0 * dy * p2c + ds0 * 3.0 * c) / (2.0 * x)
            db_th = -3.0 * ((1.0 - 2.0 * c * c) / sq * s0
                            + c * sq * ds0 * dy) / (2.0 * x * x)
            dsq = -c / sq
            da_coef = self.cq * (a_r + c * da_r - dsq * b_th - sq * db_th)
            db_coef = self.sq_q * (dsq * a_r + sq * da_r + b_th + c * db_th)
            out["dA"] = x * da_coef
            out["dB"] = x * db_coef
        return out

    def weight(self, eps):
        return _wlog((eps - self.mu) / self.t) / self.t


def _refine_roots(kern, s, sign, cgrid, hvals):
    """Machine-precision roots of s - A(c) -/+ B(c) from grid sign changes.

    Safeguarded vectorized Newton within each bracketing cell; returns the
    roots and |d(s - A -/+ B)/dc| there.  sign=+1 solves s=A+B, -1 s=A-B.
    """
    idx = np.nonzero((hvals[:-1] * hvals[1:] < 0.0)
                     & np.isfinite(hvals[:-1]) & np.isfinite(hvals[1:]))[0]
    if idx.size == 0:
        return [], []
    lo, hi = cgrid[idx].copy(), cgrid[idx + 1].copy()
    flo = hvals[idx].copy()
    c = lo + (hi - lo) * flo / (flo - hvals[idx + 1])
    for _ in range(40):
        g = kern.geometry(c, derivs=True)
        f = s - g["A"] - sign * g["B"]
        df = -(g["dA"] + sign * g["dB"])
        shrink = flo * f > 0.0
        lo = np.where(shrink, c, lo)
        hi = np.where(shrink, hi, c)
        flo = np.where(shrink, f, flo)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(df != 0.0, f / df, 0.0)
        cn = c - step
        bad = (cn <= lo) | (cn >= hi) | ~np.isfinite(cn)
        cn = np.where(bad, 0.5 * (lo + hi), cn)
        if np.all(np.abs(cn - c) < 1e-15):
            c = cn
            break
        c = cn
    g = kern.geometry(c, derivs=True)
    dmag = np.abs(g["dA"] + sign * g["dB"])
    return list(c), list(dmag)


def _panel_batch(edges, sing):
    """Concatenated Gauss nodes/weights for panels [edges[i], edges[i+1]];
    sqrt-map any panel end touching a resonance boundary (sing flags)."""
    nodes, wts = [], []
    for i in range(len(edges) - 1):
        a, b = edges[i], edges[i + 1]
        if b - a < 1e-14:
            continue
        pieces = [(a, b, sing[i], sing[i + 1])]
        if sing[i] and sing[i + 1]:
            m = 0.5 * (a + b)
            pieces = [(a, m, True, False), (m, b, False, True)]
        for (pa, pb, sl, sr) in pieces:
            if sl or sr:
                vmax = math.sqrt(pb - pa)
                v = 0.5 * (_GL_X + 1.0) * vmax
                wv = _GL_W * 0.5 * vmax * 2.0 * v
                nodes.append(pa + v * v if sl else pb - v * v)
                wts.append(wv)
            else:
                mid, half = 0.5 * (pa + pb), 0.5 * (pb - pa)
                nodes.append(mid + half * _GL_X)
                wts.append(half * _GL_W)
    if not nodes:
        return np.empty(0), np.empty(0)
    return np.concatenate(nodes), np.concatenate(wts)


def _phi_kernels(zeta, a_res, b_res):
    """Closed-form azimuthal integrals of cos^n(phi) xg/(zeta - xg), n=0,1,2.

    Retarded branch on the real axis (Im switches on inside the resonance
    window |zeta - A| < |B|); for complex zeta the analytic continuation
    2 pi / (sqrt(u - B) sqrt(u + B)).
    """
    u = zeta - a_res
    b = b_res
    if np.iscomplexobj(np.asarray(zeta)) and np.imag(zeta) != 0.0:
        c0 = TWO_PI / (np.sqrt(u - b) * np.sqrt(u + b))
    else:
        u = np.asarray(u, dtype=float)
        inside = np.abs(u) < np.abs(b)
        with np.errstate(invalid="ignore", divide="ignore"):
            re = np.sign(u) * TWO_PI / np.sqrt(np.maximum(u * u - b * b, 1e-300))
            im = -TWO_PI / np.sqrt(np.maximum(b * b - u * u, 1e-300))
        c0 = np.where(inside, 1j * im, re + 0j)
    small = np.abs(b) < 1e-7 * np.maximum(np.abs(u), 1e-30)
    bsafe = np.where(small, 1.0, b)
    with np.errstate(invalid="ignore", divide="ignore"):
        c1 = np.where(small, TWO_PI * b / (2.0 * u * u),
                      (u * c0 - TWO_PI) / bsafe)
        c2 = np.where(small, TWO_PI * (0.5 / u + 3.0 * b * b / (8.0 * u**3)),
                      (u * u * c0 - TWO_PI * u) / (bsafe * bsafe))
    f0 = -TWO_PI + zeta * c0
    f1 = zeta * c1
    f2 = -math.pi + zeta * c2
    return f0, f1, f2


def _c_integral_generic(x, s, tab, theta_q, t, mu):
    """Inner integral over c = cos(theta_k) at fixed x, theta_q > 0.

    Returns the three phi-integrated angular moments (n = 0, 1, 2 powers of
    the q-projection) of the resonance kernel against the thermal weight.
    """
    kern = _CKernel(x, tab, theta_q, t, mu)
    cgrid = np.linspace(-1.0, 1.0, 161)
    g = kern.geometry(cgrid)
    wg = kern.weight(g["eps"])
    if np.max(wg) < 1e-18:
        return np.zeros(3, dtype=complex)
    r1, d1 = _refine_roots(kern, s, +1.0, cgrid, s - g["A"] - g["B"])
    r2, d2 = _refine_roots(kern, s, -1.0, cgrid, s - g["A"] + g["B"])
    if any(d < 1e-6 for d in d1 + d2):
        return _c_integral_complex(x, s + 2e-7j, tab, theta_q, t, mu)

    roots = sorted(r for r in r1 + r2 if -1.0 + 1e-13 < r < 1.0 - 1e-13)
    edges = [-1.0] + roots + [1.0]
    sing = [False] + [True] * len(roots) + [False]
    nodes, wts = _panel_batch(edges, sing)
    gn = kern.geometry(nodes)
    w = kern.weight(gn["eps"])
    ya = nodes * kern.cq
    yb = gn["sq"] * kern.sq_q
    f0, f1, f2 = _phi_kernels(s, gn["A"], gn["B"])
    e00 = w * f0
    e10 = w * (ya * f0 + yb * f1)
    e11 = w * (ya * ya * f0 + 2.0 * ya * yb * f1 + yb * yb * f2)
    return np.array([np.sum(wts * e00), np.sum(wts * e10),
                     np.sum(wts * e11)])


def _c_integral_axial(x, s, tab, t, mu):
    """Inner c-integral for theta_q = 0: the azimuthal kernel is trivial
    and the denominator s - x g(c) has simple poles in c.

    Principal value by global pole subtraction, retarded residues -i pi N/|D'|.
    """
    kern = _CKernel(x, tab, 0.0, t, mu)
    cgrid = np.linspace(-1.0, 1.0, 161)
    g = kern.geometry(cgrid)
    wg = kern.weight(g["eps"])
    if np.max(wg) < 1e-18:
        return np.zeros(3, dtype=complex)
    roots, dmags = _refine_roots(kern, s, +1.0, cgrid, s - g["A"] - g["B"])
    if any(d < 1e-6 for d in dmags):
        return _c_integral_complex(x, s + 2e-7j, tab, 0.0, t, mu)
    roots = [r for r in roots if -1.0 + 1e-12 < r < 1.0 - 1e-12]

    res = []
    for r in roots:
        gr = kern.geometry(np.array([r]), derivs=True)
        xg_r = gr["A"][0]
        num = TWO_PI * kern.weight(gr["eps"])[0] * xg_r
        res.append((r, num, -gr["dA"][0]))

    edges = [-1.0] + sorted(r for r, _, _ in res) + [1.0]
    sing = [False] * len(edges)
    nodes, wts = _panel_batch(edges, sing)
    gn = kern.geometry(nodes)
    w = kern.weight(gn["eps"])
    xg = gn["A"]
    base = TWO_PI * w * xg / (s - xg)
    out = np.zeros(3, dtype=complex)
    for n in range(3):
        f = base * nodes**n
        for (r, num, dpr) in res:
            f = f - (num * r**n / dpr) / (nodes - r)
        val = float(np.sum(wts * f))
        im = 0.0
        for (r, num, dpr) in res:
            val += (num * r**n / dpr) * math.log(abs((1.0 - r) / (1.0 + r)))
            im += -math.pi * (num * r**n) / abs(dpr)
        out[n] = complex(val, im)
    return out


def _y_block_axial(raw):
    """Map raw moments int 2 pi W c^n K to the Y-basis entries."""
    f00 = raw[0] / (4.0 * math.pi)
    f10 = math.sqrt(3.0) * raw[1] / (4.0 * math.pi)
    f11 = 3.0 * raw[2] / (4.0 * math.pi)
    return np.array([f00, f10, f11])


def chi3d_block(theta_q: float, s, state: ReducedState,
                rel: float = 1e-6) -> Chi3dBlock:
    """The (chi_0000, chi_1000, chi_1100) response block at mode speed s.

    s may be complex (upper half-plane) for oracle comparisons; on the real
    axis the retarded branch is computed internally and returned with the
    Im >= 0 sign convention.
    """
    if state.dimension is not Dimension.THREE:
        raise DomainError("chi3d_block needs a 3D state")
    if state.t <= 0:
        raise DomainError("chi3d_block requires t > 0")
    tab, x_lo, x_hi = _tables(state)
    t, mu = state.t, state.mu0_tilde
    pad = abs(tab.s1)

    pts = []
    for kk in (-30.0, -15.0, -7.0, -3.0, 0.0, 3.0, 7.0, 15.0, 30.0):
        for off in (-pad, 0.0, pad):
            v = mu + kk * t + off
            if v > 1e-9:
                pts.append(math.sqrt(v))
    pts = sorted({round(p, 12) for p in pts if x_lo < p < x_hi})

    axial = abs(math.sin(theta_q)) < 1e-12
    complex_s = np.iscomplexobj(np.asarray(s)) and abs(np.imag(s)) > 0

    def fx(x):
        if axial and not complex_s:
            raw = _y_block_axial(_c_integral_axial(x, float(np.real(s)),
                                                   tab, t, mu))
        else:
            if complex_s:
                moms = _c_integral_complex(x, s, tab, theta_q, t, mu)
            else:
                moms = _c_integral_generic(x, float(np.real(s)), tab,
                                           theta_q, t, mu)
            raw = np.array([moms[0] / (4.0 * math.pi),
                            math.sqrt(3.0) * moms[1] / (4.0 * math.pi),
                            3.0 * moms[2] / (4.0 * math.pi)])
        v = x * x * raw / (2.0 * math.pi) ** 3
        return np.concatenate([v.real, v.imag])

    out, err = integrate.quad_vec(fx, x_lo, x_hi, points=pts or None,
                                  epsabs=0.3 * rel, epsrel=rel, limit=200,
                                  quadrature="gk15")
    vals = out[:3] + 1j * out[3:]
    # retarded -> reported convention with Im >= 0
    vals = np.conj(vals)
    return Chi3dBlock(chi_0000=complex(vals[0]), chi_1000=complex(vals[1]),
                      chi_1100=complex(vals[2]), s=complex(s).real,
                      theta_q=theta_q)


def _c_integral_complex(x, s, tab, theta_q, t, mu):
    """Inner c-integral for complex s (no real-axis singularities)."""
    nodes = np.linspace(-1.0, 1.0, 241)
    kern = _CKernel(x, tab, theta_q, t, mu)
    g = kern.geometry(nodes)
    w = kern.weight(g["eps"])
    ya = nodes * kern.cq
    yb = g["sq"] * kern.sq_q
    f0, f1, f2 = _phi_kernels(s, g["A"], g["B"])
    e00 = w * f0
    e10 = w * (ya * f0 + yb * f1)
    e11 = w * (ya * ya * f0 + 2.0 * ya * yb * f1 + yb * yb * f2)
    return np.array([np.trapezoid(e00, nodes), np.trapz(e10, nodes),
                     np.trapezoid(e11, nodes)])


def mode_matrix(theta_q: float, s, state: ReducedState,
                rel: float = 1e-6) -> np.ndarray:
    """M(s) in the coupled s-wave / longitudinal p-wave basis."""
    blk = chi3d_block(theta_q, s, state, rel=rel)
    f = landau_params(state.lam, theta_q)
    # retarded branch for the dispersion/damping analysis
    c00 = np.conj(blk.chi_0000)
    c10 = np.conj(blk.chi_1000)
    c11 = np.conj(blk.chi_1100)
    return np.array([[c00 * f["f00_0"], c10 * f["f11_0"]],
                     [c10 * f["f00_0"], c11 * f["f11_0"]]])


def det_dispersion(theta_q: float, s, state: ReducedState,
                   rel: float = 1e-6) -> complex:
    """det(I - M) with the retarded branch."""
    m = mode_matrix(theta_q, s, state, rel=rel)
    return complex((1.0 - m[0, 0]) * (1.0 - m[1, 1]) - m[0, 1] * m[1, 0])


def solve_zerosound_3d(theta_q: float, state: ReducedState,
                       s_max: float = 10.0, n_scan: int = 48,
                       rel: float = 1e-6) -> ModeSolution:
    """Zero-sound root of Re det(I - M(s)) = 0 for propagation angle
    theta_q, with Landau damping from the imaginary part.

    No sign change in the scan window -> the mode does not propagate
    (overdamped_flag set, converged False).
    """
    if state.t <= 0:
        raise DomainError("solve_zerosound_3d requires t > 0")

    grid = 1.0 + np.geomspace(2e-4, s_max - 1.0, n_scan)
    re_vals = np.empty(n_scan)
    det_cache = {}

    def re_d(s):
        if s not in det_cache:
            det_cache[s] = det_dispersion(theta_q, s, state, rel=rel)
        return det_cache[s].real

    for i, s in enumerate(grid):
        re_vals[i] = re_d(s)
    best = None
    for i in range(n_scan - 1):
        if not (np.isfinite(re_vals[i]) and np.isfinite(re_vals[i + 1])
                and re_vals[i] * re_vals[i + 1] < 0.0):
            continue
        root = optimize.brentq(re_d, grid[i], grid[i + 1],
                               xtol=1e-12, rtol=4e-15)
        d0 = det_dispersion(theta_q, root, state, rel=rel)
        h = 1e-5 * root
        dre = (re_d(root + h) - re_d(root - h)) / (2.0 * h)
        gamma = d0.imag / dre if dre != 0.0 else math.inf
        over = not math.isfinite(gamma) or gamma < -1e-9 or gamma / root > 0.5
        sol = ModeSolution(float(root), float(max(gamma, 0.0)), theta_q,
                           True, over)
        if not over:
            return sol
        if best is None:
            best = sol
    if best is not None:
        return best
    return ModeSolution(math.nan, math.nan, theta_q, False, True)


def zerosound_ceiling_3d(state: ReducedState, t_lo: float = 0.1,
                         t_hi: float = 0.35, tol: float = 0.01) -> float:
    """Highest reduced temperature at which an axial mode still solves the
    dispersion relation, by bisection on mode existence at theta_q = 0."""
    from dataclasses import replace

    def exists(t):
        st = replace(state, t=t, mu0_tilde=mu0_reduced(Dimension.THREE, t))
        sol = solve_zerosound_3d(0.0, st)
        return sol.converged and not sol.overdamped_flag

    if not exists(t_lo):
        raise NumericsError(f"no axial mode even at t={t_lo}")
    if exists(t_hi):
        raise NumericsError(f"mode survives to t={t_hi}; raise t_hi")
    lo, hi = t_lo, t_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if exists(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
