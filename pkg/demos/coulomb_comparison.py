"""Hartree-Fock inverse compressibility of the 2D spinless Coulomb gas,
whose low-temperature t^2 ln t term produces an interior extremum already
at leading order; shown here for several r_s values."""
import numpy as np

from dipfermi import observables
from dipfermi.cli import write_csv

rows = []
for rs in (0.5, 1.0, 2.0):
    for t in np.geomspace(0.02, 1.0, 30):
        rows.append([rs, t, observables.coulomb_kappa_ratio_2d(rs, t), "ok"])
write_csv("coulomb_kappa_2d.csv", {"t_star": observables.coulomb_peak_t()},
          ["r_s", "t", "kappa0_over_kappa", "status"], rows)
print("wrote coulomb_kappa_2d.csv")
