"""Radial effective mass of a 3D dipolar Fermi gas at the Fermi surface,
against temperature and density, plus the mechanical-stability line where
the radial mass at the poles diverges.

Writes effective_mass_3d.csv and stability_line_3d.csv.
"""
import math
import numpy as np

from dipfermi.units import Dimension, PhysicalParams, reduce_params
from dipfermi import observables
from dipfermi.cli import write_csv

KRB = dict(mass_amu=127.0, dipole_debye=0.57)

rows = []
for n in (1e12, 5e12):
    for t_nk in np.geomspace(5.0, 500.0, 25):
        p = PhysicalParams(density=n, temperature_nk=t_nk,
                           dimension=Dimension.THREE, **KRB)
        st = reduce_params(p)
        pole = observables.effective_mass(Dimension.THREE, 1.0, 0.0, st)
        equator = observables.effective_mass(Dimension.THREE, 1.0,
                                             math.pi / 2, st)
        rows.append([n, t_nk, st.t, pole.m_over_mstar_radial,
                     equator.m_over_mstar_radial, "ok"])
write_csv("effective_mass_3d.csv", {"species": "KRb-like", "d_debye": 0.57},
          ["density_cm3", "T_nK", "t", "m_over_mstar_pole",
           "m_over_mstar_equator", "status"], rows)

rows = []
for t in np.linspace(1e-3, 0.4, 17):
    res = observables.stability_line_3d(t)
    rows.append([t, res["lambda_c"], "ok" if res["converged"] else res["note"]])
write_csv("stability_line_3d.csv", {}, ["t", "lambda_c", "status"], rows)
print("wrote effective_mass_3d.csv, stability_line_3d.csv")
