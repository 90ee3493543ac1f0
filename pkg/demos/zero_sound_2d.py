"""Zero sound of a 10 nm thick dipolar monolayer versus temperature and
density.  The mode keeps propagating to surprisingly high temperature
because of the strongly repulsive short-distance core of the effective 2D
interaction.  Uses the CLI (see zero_sound_2d.cfg)."""
from dipfermi.cli import main

main(["zerosound", "--dim", "2", "--density", "1e9", "--width", "10",
      "--sweep", "temp:0.024:240:25:log", "--out", "zerosound2d_vs_T.csv"])
main(["zerosound", "--dim", "2", "--temp", "10", "--width", "10",
      "--sweep", "density:1e8:1e10:25:log", "--out", "zerosound2d_vs_n.csv"])
print("wrote zerosound2d_vs_T.csv, zerosound2d_vs_n.csv")
