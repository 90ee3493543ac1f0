"""Frozen physical and mathematical constants.

Physical constants are CODATA-2018 exact/recommended values so that golden
tests are reproducible bit-for-bit.  Dipole moments follow the Gaussian
convention in which ``d**2 / r**3`` is an energy; a moment given in Debye is
therefore converted via ``d2 = (debye * 3.335...e-30)**2 / (4 pi eps0)`` and
carried around as an energy*volume (J m^3).
"""

import math

# CODATA-2018
HBAR = 1.054571817e-34        # J s (derived from exact h)
H_PLANCK = 6.62607015e-34     # J s (exact)
KB = 1.380649e-23             # J/K (exact)
AMU = 1.66053906660e-27       # kg
DEBYE = 3.33564095198152e-30  # C m  (1e-21/c)
EPS0 = 8.8541878128e-12       # F/m
FOUR_PI_EPS0 = 4.0 * math.pi * EPS0

# mathematical constants used by the low-temperature expansions
EULER_GAMMA = 0.5772156649015328606
ZETA_PRIME_MINUS1 = -0.16542114370045092921   # zeta'(-1) = 1/12 - ln(Glaisher)
ZETA_PRIME_2 = -0.93754825431584375370        # zeta'(2)

NM = 1e-9
MICRON = 1e-6


class SpecialConstants:
    """Bundle of the transcendental constants entering the expansions."""

    euler_gamma = EULER_GAMMA
    zeta_prime_minus1 = ZETA_PRIME_MINUS1
    zeta_prime_2 = ZETA_PRIME_2


def dipole_energy_volume(dipole_debye: float) -> float:
    """d^2/(4 pi eps0) in J m^3 for a dipole moment given in Debye."""
    d_si = dipole_debye * DEBYE
    return d_si * d_si / FOUR_PI_EPS0


def zeta_prime_2_reference(n: int = 400) -> float:
    """Independent evaluation of zeta'(2) = -sum_k ln(k)/k^2.

    Direct sum up to n plus an Euler-Maclaurin tail; used by the self-check
    to cross-validate the frozen table without importing it.
    """
    g = lambda x: math.log(x) / x**2
    gp = lambda x: (1.0 - 2.0 * math.log(x)) / x**3
    gp3 = lambda x: (26.0 - 24.0 * math.log(x)) / x**5
    partial = sum(g(k) for k in range(2, n))
    tail = (math.log(n) + 1.0) / n + g(n) / 2.0 - gp(n) / 12.0 + gp3(n) / 720.0
    return -(partial + tail)


def zeta_prime_minus1_reference() -> float:
    """zeta'(-1) from zeta'(2) via the Glaisher-constant identity.

    ln A = (gamma + ln 2 pi)/12 - zeta'(2)/(2 pi^2)  and
    zeta'(-1) = 1/12 - ln A.
    """
    ln_a = (EULER_GAMMA + math.log(2.0 * math.pi)) / 12.0 \
        - zeta_prime_2_reference() / (2.0 * math.pi**2)
    return 1.0 / 12.0 - ln_a
