"""Quasi-1D compressibility for dipoles perpendicular to the tube axis, for
loose (100 nm) and tight (10 nm) transverse confinement.

In 1D the interior maximum of kappa/kappa_0 versus temperature survives
even without interactions; interactions mostly shift the inverse
compressibility by a constant.  Writes kappa1d_* CSVs."""
import math
import numpy as np

from dipfermi.units import Dimension, PhysicalParams, reduce_params
from dipfermi import observables
from dipfermi.cli import write_csv

for w_nm, n_cm, tag in ((100.0, 1e4, "w100"), (10.0, 1e5, "w10")):
    rows = []
    for t_nk in np.geomspace(0.2, 200.0, 35):
        p = PhysicalParams(127.0, 0.57, n_cm, t_nk, Dimension.ONE,
                           width_nm=w_nm, theta_e=math.pi / 2)
        st = reduce_params(p)
        r = observables.kappa_ratio(st, "numeric")
        rows.append([t_nk, st.t, st.kfw, r.kappa_ratio, r.inv_ratio, "ok"])
    write_csv(f"kappa1d_vs_T_{tag}.csv", {"width_nm": w_nm, "n_cm": n_cm},
              ["T_nK", "t", "kfw", "kappa_over_kappa0", "kappa0_over_kappa",
               "status"], rows)
print("wrote kappa1d_vs_T_w100.csv, kappa1d_vs_T_w10.csv")
