"""Zero sound of a quasi-1D tube (w = 10 nm, dipoles perpendicular to the
axis) versus temperature and density.  At high density the speed falls back
toward the Fermi velocity because the 1D response vanishes like 1/n."""
import math
from dipfermi.cli import main

main(["zerosound", "--dim", "1", "--density", "1e4", "--width", "10",
      "--theta-e", str(math.pi / 2),
      "--sweep", "temp:0.005:50:25:log", "--out", "zerosound1d_vs_T.csv"])
main(["zerosound", "--dim", "1", "--temp", "1", "--width", "10",
      "--theta-e", str(math.pi / 2),
      "--sweep", "density:3e3:3e5:25:log", "--out", "zerosound1d_vs_n.csv"])
print("wrote zerosound1d_vs_T.csv, zerosound1d_vs_n.csv")
