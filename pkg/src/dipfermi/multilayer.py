"""Quasi-2D multilayer: a 3D dipolar gas in a 1D optical lattice along z.

Bloch bands of the lattice, the first-order chemical-potential shift, the
multilayer compressibility, the in-plane collective-mode matrix in the
reciprocal-lattice basis, and the axial Kohn (sloshing) mode.

Lattice units: momenta in Q0 = 2 pi/lambda_lat (so the first Brillouin zone
is |k_z| <= 1/2), energies in the recoil E_R = hbar^2 Q0^2/(2 m).  The
lattice potential is V(z) = (V0/2)(1 - cos(2 pi z/lambda)), the minimal form
consistent with reciprocal vectors at integer multiples of 2 pi/lambda; its
local harmonic frequency is hbar*omega_ho = sqrt(V0 E_R).  Densities are
given per layer, n_2D = n_3D * lambda, with nred = n_2D lambda^2; dipoles
are aligned along the lattice axis.

The per-layer 2D scales are E_2D = hbar^2 4 pi n_2D/(2 m) = (nred/pi) E_R
and v_F = hbar k_F/m with k_F = sqrt(4 pi n_2D).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import linalg, optimize

from . import DomainError, NumericsError
from .constants import HBAR, KB, NM, AMU
from .constants import dipole_energy_volume

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LatticeSpec:
    """Optical-lattice parameters: depth in recoil units, wavelength
    (= period) in nm, Bloch coefficient cutoff N, mode-matrix size."""
    v0: float
    wavelength_nm: float
    n_trunc: int = 50
    m_size: int = 17
    n_kz: int = 128
    n_bands: int = 14

    def __post_init__(self):
        if self.v0 < 0:
            raise DomainError("lattice depth must be >= 0")
        if self.wavelength_nm <= 0:
            raise DomainError("wavelength must be positive")
        if self.n_trunc < 8:
            raise DomainError("Bloch truncation N must be >= 8")
        if self.m_size % 2 != 1:
            raise DomainError("matrix truncation must be odd")


class BlochData:
    """Eigensystem of the plane-wave lattice Hamiltonian on a k_z grid.

    u[i, b, q + N] is the coefficient of exp(i (k_z - q Q0) z) for band b at
    grid point k_z[i]; energies eps[i, b] are in E_R and ascend with b.  The
    grid is a midpoint grid over the first Brillouin zone.  Extended-zone
    lookups map momentum p = k_z + j to the band whose dominant plane-wave
    component is p.
    """

    def __init__(self, spec: LatticeSpec):
        self.spec = spec
        n = spec.n_trunc
        nb = min(spec.n_bands, 2 * n)
        self.kz = (np.arange(spec.n_kz) + 0.5) / spec.n_kz - 0.5
        self.dk = 1.0 / spec.n_kz
        qs = np.arange(-n, n + 1)
        nk = spec.n_kz
        self.u = np.empty((nk, nb, 2 * n + 1))
        self.eps = np.empty((nk, nb))
        off = np.full(2 * n, -spec.v0 / 4.0)
        for i, k in enumerate(self.kz):
            diag = (k - qs) ** 2 + spec.v0 / 2.0
            try:
                w, v = linalg.eigh_tridiagonal(
                    diag, off, select="i", select_range=(0, nb - 1))
            except linalg.LinAlgError as exc:
                raise NumericsError(f"Bloch eigensolver failed at k_z={k}") \
                    from exc
            # phase fix: largest coefficient real positive
            sign = np.sign(v[np.argmax(np.abs(v), axis=0), np.arange(nb)])
            self.u[i] = (v * np.where(sign == 0, 1.0, sign)).T
            self.eps[i] = w
        self.n = n
        self.nb = nb
        # extended-zone band choice per (k-index, shell offset j)
        jmax = min(n - 1, nb - 1)
        self._band_of_offset = np.empty((nk, 2 * jmax + 1), dtype=int)
        for j in range(-jmax, jmax + 1):
            self._band_of_offset[:, j + jmax] = np.argmax(
                np.abs(self.u[:, :, n - j]), axis=1)
        self._jmax = jmax

    # -- extended-zone helpers ------------------------------------------
    def fold(self, p):
        """Extended momentum -> (grid index, shell offset j)."""
        j = np.rint(p).astype(int) if np.ndim(p) else int(round(p))
        k = p - j
        idx = np.rint((k + 0.5) / self.dk - 0.5).astype(int) if np.ndim(p) \
            else int(round((k + 0.5) / self.dk - 0.5))
        idx = np.clip(idx, 0, self.spec.n_kz - 1)
        return idx, j

    def band_at(self, idx, j):
        return self._band_of_offset[idx, j + self._jmax]

    def eps_ext(self, p):
        """Extended-zone band energy at momentum p (E_R units).

        Shells beyond the tracked band range return +inf: transitions into
        them are truncated away rather than mapped to a wrong band.
        """
        idx, j = self.fold(p)
        if abs(j) > self._jmax:
            return math.inf
        return self.eps[idx, self.band_at(idx, j)]

    def u_ext(self, p):
        """Extended-convention coefficient vector at momentum p.

        u~_q(p) = u_(q-j)(fold(p)) for the dominant band; returns the
        folded-band vector shifted so that index (q + N) refers to q.
        Zero vector beyond the tracked shell range.
        """
        idx, j = self.fold(p)
        vec = np.zeros(2 * self.n + 1)
        if abs(j) > self._jmax:
            return vec
        b = self.band_at(idx, j)
        lo = max(0, j)
        hi = min(2 * self.n + 1, 2 * self.n + 1 + j)
        vec[lo:hi] = self.u[idx, b][max(0, -j):2 * self.n + 1 - max(0, j)]
        return vec

    def density_profile_norm(self):
        """max |integral over cell of |phi|^2 - 1| across the grid."""
        return float(np.max(np.abs(np.sum(self.u**2, axis=2) - 1.0)))


@lru_cache(maxsize=4)
def bloch_solve(spec: LatticeSpec) -> BlochData:
    """Diagonalize the lattice Hamiltonian (cached per spec)."""
    return BlochData(spec)


# ---------------------------------------------------------------------------
# thermodynamics on the band structure
# ---------------------------------------------------------------------------

def _occ_perp(mu, eps_z, t_r):
    """int k dk/(2 pi) n_F(eps_z + k^2 - mu) = (t_R/4 pi) ln(1+e^((mu-eps)/t))."""
    if t_r == 0.0:
        return np.maximum(mu - eps_z, 0.0) / (4.0 * math.pi)
    z = (mu - eps_z) / t_r
    return t_r / (4.0 * math.pi) * np.logaddexp(0.0, z)


def mu0_lattice(bloch: BlochData, nred: float, t_r: float) -> float:
    """Noninteracting chemical potential (E_R units) at reduced per-layer
    density nred = n_2D lambda^2 and temperature t_R = k_B T/E_R.

    Solves nred = (2 pi)^2 sum_b int dk_z occ_perp(mu, eps_b(k_z))."""
    if nred <= 0:
        raise DomainError("density must be positive")
    eps = bloch.eps
    dk = bloch.dk

    def total(mu):
        return (TWO_PI ** 2) * float(np.sum(_occ_perp(mu, eps, t_r))) * dk

    lo = float(eps.min()) - max(5.0 * t_r, 1.0)
    hi = float(eps.max()) + nred + max(5.0 * t_r, 1.0)
    return float(optimize.brentq(lambda m: total(m) - nred, lo, hi,
                                 xtol=1e-12, rtol=8.9e-16))


def fermi_level_lattice(bloch: BlochData, nred: float) -> float:
    """Zero-temperature Fermi level of the lattice gas (E_R units)."""
    return mu0_lattice(bloch, nred, 0.0)


# ---------------------------------------------------------------------------
# chemical-potential shift Delta mu
# ---------------------------------------------------------------------------

def _self_correlations(bloch: BlochData, idx, band):
    """S_k(q) = sum_q' u_q' u_(q'+q) for q in [-2N, 2N]."""
    u = bloch.u[idx, band]
    return np.correlate(u, u, mode="full")


def delta_mu(bloch: BlochData, nred: float, t_r: float, vred: float,
             n_surface: int = 32, n_eps: int = 48) -> dict:
    """First-order interaction shift of the chemical potential.

    vred = (8 pi/3) d^2 Q0^3/E_R is the reduced dipolar strength (dipoles
    along the lattice).  The azimuthal integral of the exchange term is
    analytic; what remains is the reciprocal-lattice sum, the Fermi-surface
    average (uniform in k_z per occupied band, which is the
    density-of-states weighting for in-plane parabolic dispersion), and a
    2D (k_z, eps_perp) quadrature.

    Returns {'dmu_er', 'dmu_over_e2d', 'e2d_er', 'ef_er', 'mu0_er'}.
    """
    if vred < 0:
        raise DomainError("coupling must be >= 0")
    e2d = nred / math.pi
    out = {"e2d_er": e2d}
    mu0 = mu0_lattice(bloch, nred, t_r)
    ef = fermi_level_lattice(bloch, nred)
    out["mu0_er"] = mu0
    out["ef_er"] = ef
    if vred == 0.0:
        out["dmu_er"] = 0.0
        out["dmu_over_e2d"] = 0.0
        return out

    kz = bloch.kz
    eps = bloch.eps                       # (nk, nb)
    occupied_bands = [b for b in range(bloch.nb)
                      if np.min(eps[:, b]) < ef + 40.0 * t_r]
    if not occupied_bands:
        raise NumericsError("no occupied bands at this density")

    # Fermi surface nodes: per band, k_z points where eps_b < E_F; the
    # DOS-weighted surface average is uniform in k_z per band, so each node
    # carries measure (band occupied measure)/(nodes in band)
    surf = []
    for b in occupied_bands:
        mask = eps[:, b] < ef
        if not np.any(mask):
            continue
        idxs = np.nonzero(mask)[0]
        take = np.unique(np.linspace(0, len(idxs) - 1,
                                     min(n_surface, len(idxs))).astype(int))
        w_node = len(idxs) / len(take)
        for i in idxs[take]:
            surf.append((int(i), b, w_node))
    if not surf:
        raise NumericsError("empty Fermi surface")

    # in-plane energy panels resolving the thermal edge; the edge position
    # eps_perp = mu0 - eps_b(k_z) sweeps the band width, so panel sizes are
    # tied to max(t_r, bandwidth)
    def band_panels(b):
        lo = max(mu0 - float(eps[:, b].max()) - 30.0 * max(t_r, 1e-4), 0.0)
        hi = max(mu0 - float(eps[:, b].min()) + 30.0 * max(t_r, 1e-4), 1e-3)
        panels = [(0.0, lo)] if lo > 1e-12 else []
        nsub = min(40, max(2, int((hi - lo) / (8.0 * max(t_r, 1e-3))) + 1))
        edges = np.linspace(lo, hi, nsub + 1)
        panels += list(zip(edges[:-1], edges[1:]))
        return panels

    gl_x, gl_w = np.polynomial.legendre.leggauss(24)

    # precompute self-correlations S_k(q) for every (kz, band)
    scorr = {}
    for b in occupied_bands:
        for i in range(len(kz)):
            scorr[(i, b)] = _self_correlations(bloch, i, b)

    dk = bloch.dk
    total = 0.0
    wsum = 0.0
    for (i_f, b_f, w_node) in surf:
        kf2 = ef - eps[i_f, b_f]
        if kf2 <= 0:
            continue
        kfp = math.sqrt(kf2)
        s_f = scorr[(i_f, b_f)]
        node_sum = 0.0
        for b in occupied_bands:
            # Hartree: v * sum_q S_k(q) S_kF(q); in-plane occupation exact
            s_all = np.stack([scorr[(i, b)] for i in range(len(kz))])
            hart_k = s_all @ s_f                           # (nk,)
            occ = _occ_perp(mu0, eps[:, b], t_r)           # (nk,)
            node_sum += vred * float(np.sum(hart_k * occ)) * dk / TWO_PI
            # exchange with the analytic azimuthal integral:
            # oint dphi V = pi v [3 Qz^2/sqrt((Qz^2+a)^2-b^2) - 1]
            ucorr = np.stack([np.correlate(bloch.u[i_f, b_f], bloch.u[i, b],
                                           mode="full")
                              for i in range(len(kz))])    # (nk, 4N+1)
            w_q = ucorr ** 2
            qs = np.arange(-2 * bloch.n, 2 * bloch.n + 1)
            keep = np.nonzero(np.max(w_q, axis=0) > 1e-15)[0]
            qz = kz[:, None] - kz[i_f] - qs[None, keep]    # (nk, nq)
            exch_kz = np.zeros(len(kz))
            for (a, bnd) in band_panels(b):
                e_nodes = 0.5 * (bnd - a) * gl_x + 0.5 * (a + bnd)
                e_wts = 0.5 * (bnd - a) * gl_w
                if t_r == 0.0:
                    occw = ((eps[:, b][:, None] + e_nodes[None, :])
                            < mu0).astype(float)
                else:
                    occw = 1.0 / (np.exp(np.clip(
                        (eps[:, b][:, None] + e_nodes[None, :] - mu0)
                        / t_r, -700, 700)) + 1.0)          # (nk, ne)
                aa = e_nodes[None, None, :] + kf2
                bb = 2.0 * np.sqrt(e_nodes)[None, None, :] * kfp
                qz2 = (qz ** 2)[:, :, None]
                root = np.sqrt(np.maximum(
                    (qz2 + aa) ** 2 - bb ** 2, 1e-300))
                kern = math.pi * vred * (3.0 * qz2 / root - 1.0)
                exch_kz += np.einsum("kq,kqe,ke,e->k", w_q[:, keep], kern,
                                     occw, e_wts)
            node_sum -= float(np.sum(exch_kz)) * dk / (2.0 * TWO_PI ** 3)
        total += w_node * node_sum
        wsum += w_node
    total /= wsum
    out["dmu_er"] = total
    out["dmu_over_e2d"] = total / e2d
    return out


def multilayer_kappa(bloch: BlochData, nred: float, t_r: float, vred: float,
                     rel_step: float = 1e-3) -> dict:
    """kappa_0/kappa = d mu/d E_2D by central differences over the per-layer
    density at fixed T, with mu = mu0 + Delta mu.

    Returns {'inv_ratio', 'kappa_ratio', 'band_jump'}; band_jump flags a
    noninteracting chemical potential crossing a band edge inside the
    stencil (the compressibility is discontinuous there).
    """
    mus = []
    for r in (1.0 + rel_step, 1.0 - rel_step):
        dm = delta_mu(bloch, nred * r, t_r, vred)
        mus.append(dm["mu0_er"] + dm["dmu_er"])
    de2d = (2.0 * rel_step) * nred / math.pi
    inv = (mus[0] - mus[1]) / de2d

    edges = [float(bloch.eps[:, b].min()) for b in range(bloch.nb)]
    mu_lo = mu0_lattice(bloch, nred * (1.0 - rel_step), t_r)
    mu_hi = mu0_lattice(bloch, nred * (1.0 + rel_step), t_r)
    jump = any(mu_lo < e <= mu_hi for e in edges)
    return {"inv_ratio": inv, "kappa_ratio": 1.0 / inv, "band_jump": jump}


# ---------------------------------------------------------------------------
# collective modes
# ---------------------------------------------------------------------------

def _c0_phi(u, b):
    """oint dphi/(u + b cos phi + i0) with the retarded branch."""
    u = np.asarray(u, dtype=float)
    b = np.abs(np.asarray(b, dtype=float))
    out = np.empty(np.broadcast(u, b).shape, dtype=complex)
    u, b = np.broadcast_arrays(u, b)
    inside = np.abs(u) < b
    with np.errstate(invalid="ignore", divide="ignore"):
        re = np.sign(u) * TWO_PI / np.sqrt(np.maximum(u * u - b * b, 1e-300))
        im = -TWO_PI / np.sqrt(np.maximum(b * b - u * u, 1e-300))
    out[~inside] = re[~inside]
    out[inside] = 1j * im[inside]
    return out


class ModeProblem:
    """Collective-mode matrix M_(m,n)(q, omega) in the reciprocal-lattice
    basis: M = V(q + K_m) chi_(K_m, K_n) with the inhomogeneous-RPA
    polarizability of the band structure.

    Built once per (bloch, nred, t_r, vred, q_perp, q_z); every frequency
    evaluation contracts precomputed band-pair vertices against the
    resonance kernel.  The in-plane momentum integral uses the analytic
    azimuthal kernel (exact at any q_perp); q_z is snapped to the k_z grid
    so shifted quasi-momenta stay on it.
    """

    def __init__(self, bloch: BlochData, nred: float, t_r: float,
                 vred: float, q_perp: float, q_z: float = 0.0,
                 n_bands: int = None):
        self.bloch = bloch
        self.t_r = max(t_r, 1e-6)
        self.vred = vred
        self.q_perp = q_perp
        spec = bloch.spec
        self.msize = spec.m_size
        self.mhalf = spec.m_size // 2
        self.mu = mu0_lattice(bloch, nred, t_r)
        self.kf = math.sqrt(nred / math.pi)
        self.kz = bloch.kz
        nb = bloch.nb if n_bands is None else min(n_bands, bloch.nb)

        # snap q_z to the grid
        steps = round(q_z / bloch.dk)
        self.q_z = steps * bloch.dk
        nk = spec.n_kz
        # index of fold(kz + q_z) and its reciprocal relabeling j0
        idx2 = (np.arange(nk) + steps) % nk
        j0 = (np.arange(nk) + steps) // nk     # 0 or +-1 wrap count

        ms = np.arange(-self.mhalf, self.mhalf + 1)
        n = bloch.n
        # V(q_perp, q_z + K_m) row factors
        qzv = self.q_z + ms.astype(float)
        vrow = vred * (2.0 * qzv**2 - q_perp**2) \
            / (2.0 * np.maximum(qzv**2 + q_perp**2, 1e-300))
        if q_perp == 0.0:
            vrow = np.where(np.abs(qzv) < 1e-12, vred, vrow)
        self.vrow = vrow

        # vertices T_m[b, b', kz] = <b kz| e^(-i(q_z+K_m)z) |b' kz+q_z>
        #   = sum_q' u^b_(q')(kz) u^b'_(q'-m-j0)(fold(kz+q_z))
        # transitions flattened over (kz, b, b') with occupation pruning
        e1 = np.broadcast_to(bloch.eps[:, :nb, None], (nk, nb, nb))
        e2 = np.broadcast_to(bloch.eps[idx2][:, None, :nb], (nk, nb, nb))
        cut = self.mu + 40.0 * self.t_r
        live = (e1 < cut) | (e2 < cut)
        ell = 2 * n + 1
        tv = np.zeros((self.msize, nk, nb, nb))
        for im, m in enumerate(ms):
            for i in range(nk):
                u1 = bloch.u[i, :nb]                 # (nb, L)
                u2 = bloch.u[idx2[i], :nb]           # (nb', L)
                off = -(int(m) + int(j0[i]))         # u2 index shift
                if off >= 0:
                    a1, a2 = u1[:, :ell - off], u2[:, off:]
                else:
                    a1, a2 = u1[:, -off:], u2[:, :ell + off]
                tv[im, i] = a1 @ a2.T
        self._finish(tv, np.ascontiguousarray(e1), np.ascontiguousarray(e2),
                     live, nk, nb)

    def _finish(self, tv, e1, e2, live, nk, nb):
        flat = live.reshape(-1)
        self.e1 = e1.reshape(-1)[flat]
        self.e2 = e2.reshape(-1)[flat]
        self.t_m = tv.reshape(self.msize, -1)[:, flat]   # (msize, T)
        # in-plane quadrature (energy variable), thermal-edge aware
        base = min(float(np.min(self.e1)), float(np.min(self.e2)))
        emax = max(self.mu + 40.0 * self.t_r - base, 10.0 * self.t_r)
        npan = min(48, max(8, int(emax / (6.0 * self.t_r)) + 1))
        panels = np.linspace(0.0, emax, npan + 1)
        gl_x, gl_w = np.polynomial.legendre.leggauss(10)
        nodes, wts = [], []
        for a, b in zip(panels[:-1], panels[1:]):
            nodes.append(0.5 * (b - a) * gl_x + 0.5 * (a + b))
            wts.append(0.5 * (b - a) * gl_w)
        self.ep_nodes = np.concatenate(nodes)
        self.ep_wts = np.concatenate(wts)
        self.occ1 = 1.0 / (np.exp(np.clip(
            (self.e1[:, None] + self.ep_nodes - self.mu) / self.t_r,
            -600, 600)) + 1.0)
        self.occ2 = 1.0 / (np.exp(np.clip(
            (self.e2[:, None] + self.ep_nodes - self.mu) / self.t_r,
            -600, 600)) + 1.0)
        keep = (np.max(self.occ1, axis=1) > 1e-15) \
            | (np.max(self.occ2, axis=1) > 1e-15)
        keep &= np.max(np.abs(self.t_m), axis=0) > 1e-12
        self.e1, self.e2 = self.e1[keep], self.e2[keep]
        self.t_m = self.t_m[:, keep]
        self.occ1, self.occ2 = self.occ1[keep], self.occ2[keep]

    def matrix(self, omega) -> np.ndarray:
        """M(omega) with the retarded i0 prescription (omega in E_R)."""
        de = self.e2 - self.e1                             # (T,)
        kp = np.sqrt(self.ep_nodes)                        # (E,)
        b_phi = 2.0 * kp * self.q_perp
        if np.iscomplexobj(np.asarray(omega)):
            kern_a = TWO_PI / np.sqrt((omega - de[:, None] + self.q_perp**2)**2
                                      - (b_phi[None, :])**2 + 0j)
            kern_b = TWO_PI / np.sqrt((omega - de[:, None] - self.q_perp**2)**2
                                      - (b_phi[None, :])**2 + 0j)
        else:
            kern_a = _c0_phi(omega - de[:, None] + self.q_perp**2,
                             b_phi[None, :])
            kern_b = _c0_phi(omega - de[:, None] - self.q_perp**2,
                             b_phi[None, :])
        # textbook retarded polarizability [n1 - n2]/(omega - (e2 - e1) + i0):
        # (1/(2pi)^3) int dk_z k dk dphi [n1 kern_b - n2 kern_a], eps = k^2
        kint = np.einsum("te,e->t", self.occ1 * kern_b - self.occ2 * kern_a,
                         self.ep_wts) * 0.5 / (2.0 * math.pi) ** 3
        kint *= self.bloch.dk
        return (self.vrow[:, None] * self.t_m * kint[None, :]) @ self.t_m.T

    def det(self, omega) -> complex:
        return complex(np.linalg.det(np.eye(self.msize)
                                     - self.matrix(omega)))


@dataclass(frozen=True)
class MultilayerSystem:
    """Physical inputs for the lattice problem (dipoles along the lattice).

    Densities are per layer in cm^-2; reduced quantities follow the module
    conventions (recoil units)."""
    mass_amu: float
    dipole_debye: float
    n2d_cm2: float
    temperature_nk: float
    spec: LatticeSpec

    @property
    def recoil_j(self) -> float:
        q0 = TWO_PI / (self.spec.wavelength_nm * NM)
        return HBAR**2 * q0**2 / (2.0 * self.mass_amu * AMU)

    @property
    def nred(self) -> float:
        return self.n2d_cm2 * 1e4 * (self.spec.wavelength_nm * NM) ** 2

    @property
    def t_r(self) -> float:
        return self.temperature_nk * 1e-9 * KB / self.recoil_j

    @property
    def vred(self) -> float:
        q0 = TWO_PI / (self.spec.wavelength_nm * NM)
        d2 = dipole_energy_volume(self.dipole_debye)
        return (8.0 * math.pi / 3.0) * d2 * q0**3 / self.recoil_j

    @property
    def t_2d(self) -> float:
        """k_B T / E_2D."""
        return self.t_r / (self.nred / math.pi)


def _spe_windows(problem: ModeProblem, pad: float) -> list:
    """Intervals of transition energy with non-negligible weight, merged."""
    de = problem.e2 - problem.e1
    weight = (np.max(problem.occ1, axis=1) + np.max(problem.occ2, axis=1)) \
        * np.max(np.abs(problem.t_m), axis=0) ** 2
    live = de[weight > 1e-9 * max(np.max(weight), 1e-30)]
    if live.size == 0:
        return []
    vals = np.sort(live)
    windows = []
    lo = hi = vals[0]
    for v in vals[1:]:
        if v - hi <= 2.0 * pad:
            hi = v
        else:
            windows.append((lo - pad, hi + pad))
            lo = hi = v
    windows.append((lo - pad, hi + pad))
    return windows


def solve_modes_inplane(bloch: BlochData, nred: float, t_r: float,
                        vred: float, s_max: float = 5.0, n_scan: int = 160,
                        q_perp_rel: float = 0.01) -> list:
    """Underdamped collective modes for in-plane momentum transfer,
    q_z = 0, q_perp -> 0, in units of the per-layer 2D Fermi speed.

    Returns a list of dicts {'v0_over_vf', 'damping_over_omega',
    'spe_flagged'}; an empty list means no propagating mode.
    """
    kf = math.sqrt(nred / math.pi)
    qp = q_perp_rel * kf
    prob = ModeProblem(bloch, nred, t_r, vred, q_perp=qp, q_z=0.0)

    def omega(s):
        return 2.0 * kf * qp * s

    def re_d(s):
        return prob.det(omega(s)).real

    grid = np.linspace(1.0 + 1e-4, s_max, n_scan)
    vals = np.array([re_d(s) for s in grid])
    windows = _spe_windows(prob, pad=2.0 * kf * qp)
    modes = []
    for i in range(n_scan - 1):
        if not (np.isfinite(vals[i]) and np.isfinite(vals[i + 1])
                and vals[i] * vals[i + 1] < 0.0):
            continue
        root = optimize.brentq(re_d, grid[i], grid[i + 1], xtol=1e-10)
        d = prob.det(omega(root))
        h = 1e-4
        dre = (re_d(root + h) - re_d(root - h)) / (2.0 * h)
        gam_w = abs(d.imag / dre) / omega(root) * (2.0 * kf * qp) \
            if dre != 0.0 else math.inf
        flagged = any(a <= omega(root) <= b for (a, b) in windows)
        if gam_w < 0.5:
            modes.append({"v0_over_vf": float(root),
                          "damping_over_omega": float(gam_w),
                          "spe_flagged": bool(flagged)})
    return modes


def kohn_mode(bloch: BlochData, nred: float, t_r: float, vred: float,
              q_z_steps: int = 2) -> dict:
    """Lowest underdamped axial mode at small q_z, in units of the local
    harmonic frequency hbar*omega_ho = sqrt(V0 E_R) of the lattice wells.

    Searches for a determinant root outside the single-particle windows;
    {'found': False} when no such root exists (e.g. shallow lattices).
    """
    w_ho = math.sqrt(bloch.spec.v0)
    q_z = q_z_steps * bloch.dk
    prob = ModeProblem(bloch, nred, t_r, vred, q_perp=0.0, q_z=q_z)
    windows = _spe_windows(prob, pad=0.02 * w_ho)

    def re_d(w):
        return prob.det(w).real

    grid = np.linspace(0.3 * w_ho, 1.8 * w_ho, 300)
    ok = np.array([not any(a <= w <= b for (a, b) in windows) for w in grid])
    vals = np.array([re_d(w) if o else np.nan for w, o in zip(grid, ok)])
    for i in range(len(grid) - 1):
        if not (np.isfinite(vals[i]) and np.isfinite(vals[i + 1])
                and vals[i] * vals[i + 1] < 0.0):
            continue
        root = optimize.brentq(re_d, grid[i], grid[i + 1], xtol=1e-10)
        d = prob.det(root)
        h = 1e-6 * w_ho
        dre = (re_d(root + h) - re_d(root - h)) / (2.0 * h)
        gam = abs(d.imag / dre) if dre != 0.0 else math.inf
        if gam / root < 0.2:
            return {"found": True, "omega_over_omega_ho": float(root / w_ho),
                    "damping_over_omega": float(gam / root),
                    "q_z": float(q_z)}
    return {"found": False, "omega_over_omega_ho": math.nan,
            "damping_over_omega": math.nan, "q_z": float(q_z)}
