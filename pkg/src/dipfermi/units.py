"""Physical inputs and conversion to the reduced working units.

Everything downstream of this module works in the dimensionless ratios the
theory is naturally expressed in: reduced temperature t = k_B T / E_F,
coupling lambda_d, reduced transverse width kfw = k_F0 * w, momenta in k_F0
and energies in E_F.  This module owns the only place where SI units appear.
"""

from dataclasses import dataclass, replace
from enum import Enum
import math

from . import DomainError
from . import constants as cn


class Dimension(Enum):
    """Spatial dimensionality of the gas (the only supported values)."""
    ONE = 1
    TWO = 2
    THREE = 3

    @property
    def d(self) -> int:
        return self.value


@dataclass(frozen=True)
class PhysicalParams:
    """Physical inputs with explicit units.

    density is in cm^-d for d = dimension; transverse width w (required for
    dimension < 3) in nm; theta_e is the angle between the electric field and
    the symmetry axis (the plane normal in 2D, the tube axis in 1D, the
    z-axis in 3D); theta_q/phi_q orient a momentum transfer where relevant.
    """
    mass_amu: float
    dipole_debye: float
    density: float
    temperature_nk: float
    dimension: Dimension
    width_nm: float = 0.0
    theta_e: float = 0.0
    theta_q: float = 0.0
    phi_q: float = 0.0

    def __post_init__(self):
        if self.mass_amu <= 0:
            raise DomainError("mass must be positive")
        if self.dipole_debye < 0:
            raise DomainError("dipole moment must be non-negative")
        if self.density <= 0:
            raise DomainError("density must be positive")
        if self.temperature_nk < 0:
            raise DomainError("temperature must be non-negative")
        if self.dimension is not Dimension.THREE and self.width_nm <= 0:
            raise DomainError("transverse width w > 0 required for d < 3")

    @property
    def mass_kg(self) -> float:
        return self.mass_amu * cn.AMU

    @property
    def density_si(self) -> float:
        """Number density in m^-d."""
        return self.density * 100.0 ** self.dimension.d

    @property
    def d2(self) -> float:
        """Dipole strength d^2/(4 pi eps0) in J m^3."""
        return cn.dipole_energy_volume(self.dipole_debye)


@dataclass(frozen=True)
class FermiScales:
    k_f0: float   # 1/m
    e_f: float    # J
    t_f: float    # K
    v_f0: float   # m/s


@dataclass(frozen=True)
class ReducedState:
    """Dimensionless working state shared by all uniform-gas modules."""
    t: float            # k_B T / E_F
    lam: float          # dimensionless dipolar coupling for this dimension
    mu0_tilde: float    # mu_0 / E_F of the noninteracting gas at t
    kfw: float          # k_F0 * w (0.0 in 3D)
    dimension: Dimension
    theta_e: float = 0.0
    theta_q: float = 0.0
    phi_q: float = 0.0

    def __post_init__(self):
        if self.t < 0:
            raise DomainError("reduced temperature t must be >= 0")
        if self.lam < 0:
            raise DomainError("coupling lambda must be >= 0")
        if self.dimension is not Dimension.THREE and self.kfw <= 0:
            raise DomainError("kfw > 0 required for d < 3")


def fermi_scales(params: PhysicalParams) -> FermiScales:
    """One-component Fermi scales: k_F0 = (6 pi^2 n)^(1/3), (4 pi n)^(1/2),
    pi n in 3/2/1 dimensions; E_F = hbar^2 k_F0^2/(2m); v_F0 = hbar k_F0/m."""
    n = params.density_si
    d = params.dimension
    if d is Dimension.THREE:
        k_f0 = (6.0 * math.pi**2 * n) ** (1.0 / 3.0)
    elif d is Dimension.TWO:
        k_f0 = math.sqrt(4.0 * math.pi * n)
    else:
        k_f0 = math.pi * n
    m = params.mass_kg
    e_f = cn.HBAR**2 * k_f0**2 / (2.0 * m)
    return FermiScales(k_f0=k_f0, e_f=e_f, t_f=e_f / cn.KB,
                       v_f0=cn.HBAR * k_f0 / m)


def coupling_lambda(params: PhysicalParams) -> float:
    """Dimensionless dipolar coupling d^2/(r0^3 E_F) per dimension:

    lambda_3D = m d^2 k_F0/(3 pi^2 hbar^2),
    lambda_2D = m d^2 k_F0/(4 pi^(3/2) hbar^2),
    lambda_1D = 2 m d^2 k_F0/(pi^3 hbar^2).
    """
    k_f0 = fermi_scales(params).k_f0
    base = params.mass_kg * params.d2 * k_f0 / cn.HBAR**2
    d = params.dimension
    if d is Dimension.THREE:
        return base / (3.0 * math.pi**2)
    if d is Dimension.TWO:
        return base / (4.0 * math.pi**1.5)
    return 2.0 * base / math.pi**3


def reduce_params(params: PhysicalParams) -> ReducedState:
    """Convert physical inputs into the reduced working state."""
    from . import thermo  # late import: thermo depends on specfun only

    scales = fermi_scales(params)
    t = params.temperature_nk * 1e-9 * cn.KB / scales.e_f
    kfw = scales.k_f0 * params.width_nm * cn.NM \
        if params.dimension is not Dimension.THREE else 0.0
    return ReducedState(
        t=t,
        lam=coupling_lambda(params),
        mu0_tilde=thermo.mu0_reduced(params.dimension, t),
        kfw=kfw,
        dimension=params.dimension,
        theta_e=params.theta_e,
        theta_q=params.theta_q,
        phi_q=params.phi_q,
    )


# density scaling exponents: E_F ~ n^(2/d), lambda ~ n^(1/d), kfw ~ n^(1/d)
def scale_density(state: ReducedState, ratio: float) -> ReducedState:
    """Reduced state at density ratio*n, measured in the *new* Fermi units.

    Used by density-derivative stencils: t, lambda and kfw are re-derived
    from their power laws t ~ n^(-2/d), lambda ~ n^(1/d), kfw ~ n^(1/d).
    """
    from . import thermo

    if ratio <= 0:
        raise DomainError("density ratio must be positive")
    d = state.dimension.d
    t = state.t * ratio ** (-2.0 / d)
    return replace(state, t=t,
                   lam=state.lam * ratio ** (1.0 / d),
                   kfw=state.kfw * ratio ** (1.0 / d),
                   mu0_tilde=thermo.mu0_reduced(state.dimension, t))


def ef_ratio(dimension: Dimension, density_ratio: float) -> float:
    """E_F(ratio*n)/E_F(n) = ratio^(2/d)."""
    return density_ratio ** (2.0 / dimension.d)
