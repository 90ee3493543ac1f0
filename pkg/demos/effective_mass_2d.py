"""Radial effective mass at the Fermi surface of the 2D monolayer versus
temperature and density.  Writes effective_mass_2d.csv."""
import numpy as np

from dipfermi.units import Dimension, PhysicalParams, reduce_params
from dipfermi import observables
from dipfermi.cli import write_csv

rows = []
for n in (1e8, 1e9):
    for t_nk in np.geomspace(0.5, 200.0, 30):
        p = PhysicalParams(127.0, 0.57, n, t_nk, Dimension.TWO, width_nm=10.0)
        st = reduce_params(p)
        em = observables.effective_mass(Dimension.TWO, 1.0, 0.0, st)
        rows.append([n, t_nk, st.t, em.m_over_mstar_radial, "ok"])
write_csv("effective_mass_2d.csv", {},
          ["density_cm2", "T_nK", "t", "m_over_mstar_radial", "status"], rows)
print("wrote effective_mass_2d.csv")
