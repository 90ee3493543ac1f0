"""Finite-temperature Hartree-Fock / Fermi-liquid numerics for one-component
dipolar Fermi gases.

Uniform 1D, 2D and 3D systems (self-energy, compressibility, effective mass,
zero sound), a quasi-2D multilayer formed by a 1D optical lattice (Bloch
bands, chemical-potential shift, compressibility, in-plane and axial
collective modes), and local-density-approximation profiles in a harmonic
trap.

Internal unit convention: momenta in units of the noninteracting Fermi
wavevector k_F0, energies in units of the Fermi energy E_F, speeds in units
of v_F0 = hbar*k_F0/m.  Lattice calculations use recoil units instead (see
`dipfermi.multilayer`).
"""


class DomainError(ValueError):
    """Input outside the physically meaningful domain of an operation."""


class NumericsError(RuntimeError):
    """A quadrature, series or root-finding step failed to converge."""


from . import constants  # noqa: E402
from .units import (  # noqa: E402
    Dimension, PhysicalParams, ReducedState, FermiScales,
    fermi_scales, coupling_lambda, reduce_params, scale_density,
)

__all__ = [
    "DomainError", "NumericsError", "constants",
    "Dimension", "PhysicalParams", "ReducedState", "FermiScales",
    "fermi_scales", "coupling_lambda", "reduce_params", "scale_density",
]

__version__ = "0.1.0"
