"""Quasi-1D effective mass at the Fermi point (w = 10 nm) against
temperature and density; at very high density the finite transverse size
saturates the interaction and the mass returns to its bare value."""
import math
import numpy as np

from dipfermi.units import Dimension, PhysicalParams, reduce_params
from dipfermi import observables
from dipfermi.cli import write_csv

rows = []
for n_cm in np.geomspace(1e3, 3e6, 40):
    p = PhysicalParams(127.0, 0.57, n_cm, 5.0, Dimension.ONE,
                       width_nm=10.0, theta_e=math.pi / 2)
    st = reduce_params(p)
    em = observables.effective_mass(Dimension.ONE, 1.0, 0.0, st)
    rows.append([n_cm, st.t, st.kfw, em.m_over_mstar_radial, "ok"])
write_csv("effective_mass_1d_vs_n.csv", {"T_nK": 5.0, "width_nm": 10.0},
          ["density_cm", "t", "kfw", "m_over_mstar", "status"], rows)
print("wrote effective_mass_1d_vs_n.csv")
