"""2D compressibility of a dipolar monolayer: kappa/kappa_0 against
temperature at fixed density and against density at fixed temperature,
dipoles perpendicular to the plane.

The temperature dependence is nonmonotonic, with the interior maximum
moving up in temperature as the density grows; the density dependence at
fixed T is nonmonotonic as well.  Uses the CLI sweep machinery so the same
curves are reproducible from the shell (see compressibility_2d.cfg).
"""
from dipfermi.cli import main

for n, tag in ((1e8, "n1e8"), (1e9, "n1e9")):
    main(["kappa", "--dim", "2", "--density", str(n), "--width", "10",
          "--sweep", "temp:0.1:100:40:log",
          "--out", f"kappa2d_vs_T_{tag}.csv"])
main(["kappa", "--dim", "2", "--temp", "20", "--width", "10",
      "--sweep", "density:1e7:1e10:40:log", "--out", "kappa2d_vs_n.csv"])
print("wrote kappa2d_vs_T_n1e8.csv, kappa2d_vs_T_n1e9.csv, kappa2d_vs_n.csv")
