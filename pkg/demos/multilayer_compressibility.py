"""Compressibility of a dipolar gas sliced into quasi-2D layers by a 1D
optical lattice (period 1 um), for a deep and a moderate lattice.

Versus temperature the deep lattice tracks the strict-2D monolayer; versus
density the ratio jumps when the chemical potential enters a higher band.
Writes multilayer_kappa_*.csv."""
import math
import numpy as np

from dipfermi import multilayer as ml
from dipfermi.cli import write_csv

for v0 in (100.0, 25.0):
    spec = ml.LatticeSpec(v0=v0, wavelength_nm=1000.0, n_trunc=40,
                          n_kz=96, n_bands=12)
    bloch = ml.bloch_solve(spec)
    rows = []
    for t_nk in np.geomspace(0.5, 100.0, 18):
        sysm = ml.MultilayerSystem(127.0, 0.57, 1e8, t_nk, spec)
        out = ml.multilayer_kappa(bloch, sysm.nred, sysm.t_r, sysm.vred)
        rows.append([t_nk, sysm.t_2d, out["kappa_ratio"], out["band_jump"],
                     "ok"])
    write_csv(f"multilayer_kappa_vs_T_V{int(v0)}.csv",
              {"v0_er": v0, "n2d_cm2": 1e8},
              ["T_nK", "t_2d", "kappa_over_kappa0", "band_jump", "status"],
              rows)
    rows = []
    for n2d in np.geomspace(1e7, 3e9, 20):
        sysm = ml.MultilayerSystem(127.0, 0.57, n2d, 20.0, spec)
        out = ml.multilayer_kappa(bloch, sysm.nred, sysm.t_r, sysm.vred)
        rows.append([n2d, sysm.t_2d, out["kappa_ratio"], out["band_jump"],
                     "band-jump" if out["band_jump"] else "ok"])
    write_csv(f"multilayer_kappa_vs_n_V{int(v0)}.csv", {"v0_er": v0},
              ["n2d_cm2", "t_2d", "kappa_over_kappa0", "band_jump", "status"],
              rows)
print("wrote multilayer_kappa_vs_{T,n}_V100.csv and _V25.csv")
