"""Local-density-approximation profiles in a harmonic trap.

The strictly-2D and quasi-1D uniform equations of state feed a local
chemical potential mu(r) = mu(0) - m omega^2 r^2/2; inverting the uniform
mu(n, T) relation pointwise gives the density profile and a local
compressibility kappa(r) = -(1/(n^2 m omega^2 r)) dn/dr.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import interpolate, optimize

from . import DomainError, NumericsError
from .constants import HBAR, KB, NM, H_PLANCK
from .units import Dimension, PhysicalParams, fermi_scales, reduce_params
from . import observables
from dataclasses import replace as _replace


@dataclass(frozen=True)
class TrapProfile:
    radius_um: np.ndarray        # radial grid
    density: np.ndarray          # cm^-d
    kappa_ratio: np.ndarray      # local kappa/kappa_0
    t_local: np.ndarray          # local reduced temperature
    omega: float                 # trap frequency, rad/s
    particle_number: float
    mu0_j: float                 # central chemical potential, J
    dimension: Dimension


class MuTable:
    """Monotone tabulation mu(n) at fixed T for one trap problem.

    Built on a log-density grid from the uniform interacting equation of
    state; inverted with monotone (PCHIP) interpolation.
    """

    def __init__(self, params: PhysicalParams, n_peak_si: float,
                 n_points: int = 200, decades: float = 7.0):
        self.params = params
        d = params.dimension.d
        n_grid = np.geomspace(n_peak_si * 10.0 ** (-decades),
                              n_peak_si * 1.6, n_points)
        mu = np.empty(n_points)
        for i, n in enumerate(n_grid):
            p = _replace(params, density=n / 100.0 ** d)
            st = reduce_params(p)
            mu[i] = observables.mu_over_ef(st) * fermi_scales(p).e_f
        if np.any(np.diff(mu) <= 0.0):
            k = int(np.argmin(np.diff(mu)))
            raise DomainError(
                f"mu(n) not monotone near n = {n_grid[k]:.3e} m^-{d}; "
                "LDA inversion is ill-defined there")
        self.n_grid, self.mu_grid = n_grid, mu
        self._n_of_mu = interpolate.PchipInterpolator(mu, n_grid)
        self._mu_of_n = interpolate.PchipInterpolator(n_grid, mu)

    def density(self, mu):
        """n(mu), clipped to zero below the tabulated range."""
        mu = np.asarray(mu, dtype=float)
        out = np.where(mu <= self.mu_grid[0], 0.0,
                       self._n_of_mu(np.clip(mu, self.mu_grid[0],
                                             self.mu_grid[-1])))
        return out

    def mu(self, n):
        return self._mu_of_n(n)


def _number_integral(table: MuTable, mu0: float, m: float, omega: float,
                     dimension: Dimension) -> float:
    """Total particle number for central chemical potential mu0."""
    pref = m * omega * omega
    r_max = math.sqrt(2.0 * max(mu0 - table.mu_grid[0], 0.0) / pref) \
        if mu0 > table.mu_grid[0] else 0.0
    if r_max == 0.0:
        return 0.0
    r = np.linspace(0.0, r_max, 2000)
    n_of_r = table.density(mu0 - 0.5 * pref * r * r)
    if dimension is Dimension.TWO:
        return float(np.trapz(2.0 * math.pi * r * n_of_r, r))
    return float(np.trapz(n_of_r, r)) * 2.0


def trap_profile(params: PhysicalParams, omega: float, n_target: float,
                 n_radii: int = 400) -> TrapProfile:
    """LDA density and local-compressibility profile in a harmonic trap.

    params.density is interpreted as the *initial guess* for the peak
    density; the central chemical potential is tuned (secant) until the
    integrated particle number matches n_target to 0.1%.
    """
    if params.dimension is Dimension.THREE:
        raise DomainError("trapped profiles are for the 2D and 1D cases")
    if omega <= 0 or n_target <= 0:
        raise DomainError("omega and N must be positive")
    d = params.dimension.d
    m = params.mass_kg

    # grow the tabulated density range until it brackets the target number
    guess = params.density_si
    for _ in range(10):
        table = MuTable(params, guess)
        if _number_integral(table, table.mu_grid[-1], m, omega,
                            params.dimension) >= n_target:
            break
        guess *= 4.0
    else:
        raise NumericsError("could not bracket the particle number; "
                            "the peak-density table keeps saturating")

    def number_of(mu0):
        return _number_integral(table, mu0, m, omega, params.dimension)

    mu_lo, mu_hi = table.mu_grid[0], table.mu_grid[-1]
    mu0 = float(optimize.brentq(
        lambda mu: number_of(mu) - n_target, mu_lo, mu_hi,
        xtol=1e-9 * abs(mu_hi) + 1e-40, rtol=1e-12))

    pref = m * omega * omega
    r_edge = math.sqrt(2.0 * (mu0 - mu_lo) / pref)
    r = np.linspace(0.0, r_edge, n_radii)
    n_r = table.density(mu0 - 0.5 * pref * r * r)
    peak = n_r[0]
    keep = n_r > 1e-6 * peak
    r, n_r = r[keep], n_r[keep]

    # local reduced state and kappa ratio per radius
    kratio = np.empty_like(r)
    t_loc = np.empty_like(r)
    for i, n in enumerate(n_r):
        p = _replace(params, density=n / 100.0 ** d)
        st = reduce_params(p)
        t_loc[i] = st.t
        kratio[i] = observables.kappa_ratio(st, "numeric").kappa_ratio
    num = _number_integral(table, mu0, m, omega, params.dimension)
    return TrapProfile(radius_um=r * 1e6, density=n_r / 100.0 ** d,
                       kappa_ratio=kratio, t_local=t_loc, omega=omega,
                       particle_number=num, mu0_j=mu0,
                       dimension=params.dimension)


def gaussian_reference(profile: TrapProfile) -> np.ndarray:
    """Gaussian with the same peak density and particle number.

    Width in closed form: 2D  N = pi w^2 n0;  1D  N = sqrt(pi) w n0.
    """
    n0_si = profile.density[0] * 100.0 ** profile.dimension.d
    if profile.dimension is Dimension.TWO:
        w2 = profile.particle_number / (math.pi * n0_si)   # m^2
        w_um = math.sqrt(w2) * 1e6
    else:
        w_um = profile.particle_number / (math.sqrt(math.pi) * n0_si) * 1e6
    return profile.density[0] * np.exp(-(profile.radius_um / w_um) ** 2)


def local_kappa_from_profile(profile: TrapProfile, params: PhysicalParams):
    """kappa(r)/kappa_0(r) from the emitted density profile alone:

    kappa(r) = -(1/(n^2 m w^2 r)) dn/dr, normalized by the local
    noninteracting zero-temperature kappa_0 = d/(2 n E_F(n)).
    Cross-validates the direct local-state evaluation.
    """
    d = profile.dimension.d
    r = profile.radius_um * 1e-6
    n = profile.density * 100.0 ** d
    dn = np.gradient(n, r)
    m = params.mass_kg
    kappa = -dn / (np.maximum(n, 1e-300) ** 2 * m * profile.omega ** 2
                   * np.maximum(r, 1e-300))
    out = np.empty_like(kappa)
    for i in range(len(r)):
        p = _replace(params, density=profile.density[i])
        e_f = fermi_scales(p).e_f
        k0 = d / (2.0 * n[i] * e_f)
        out[i] = kappa[i] / k0
    return out


def hartree_locality_check(params: PhysicalParams, omega: float) -> dict:
    """Sufficient condition for a constant Hartree term in the trap:
    the dipolar length 2 m d^2/h^2 must be small against the trap length
    l_t = sqrt(hbar/(m omega)).  Pass threshold: ratio <= 0.1."""
    m = params.mass_kg
    dip_len = 2.0 * m * params.d2 / H_PLANCK ** 2
    l_t = math.sqrt(HBAR / (m * omega))
    ratio = dip_len / l_t
    return {"dipolar_length_m": dip_len, "trap_length_m": l_t,
            "ratio": ratio, "passes": ratio <= 0.1,
            "boundary": abs(ratio - 0.1) < 1e-2}
