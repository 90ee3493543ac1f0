"""Local-density-approximation profiles in a harmonic trap: density and
local kappa/kappa_0 for a 2D plane with ~100 molecules and a quasi-1D tube
with ~1000 molecules, each with the matched-peak gaussian reference.

Uses the CLI trap command (see trap_profiles.cfg)."""
import math
from dipfermi.cli import main

main(["trap", "--dim", "2", "--density", "3e8", "--temp", "10",
      "--width", "10", "--omega", str(2 * math.pi * 500.0),
      "--ntarget", "100", "--out", "trap_profile_2d.csv"])
main(["trap", "--dim", "1", "--density", "1e4", "--temp", "50",
      "--width", "10", "--theta-e", str(math.pi / 2),
      "--omega", str(2 * math.pi * 50.0), "--ntarget", "1000",
      "--out", "trap_profile_1d.csv"])
print("wrote trap_profile_2d.csv, trap_profile_1d.csv")
