"""Regenerate the equilibrium stand-in tables in this directory.

The engine never computes the equilibrium (equal-temperature) Casimir
force; scenarios ingest it as a CSV table.  When no externally
computed table is at hand, these analytic stand-ins keep the total
force assembly meaningful:

* SiC: pairwise-additive retarded dielectric estimate, F = -B / d^7
  with B fixed by the static polarizability per unit volume of SiC
  (B = 1.175e-53 N m^6).  Good as an order-of-magnitude reference;
  the true curve is steeper at short range.
* Tungsten: Drude-conductor shape F = -A / (d^4 ln(d/R)) with R the
  20 nm wire radius.  The amplitude A = 1.6e-32 N m^3 is fitted so
  the total force in the hot-environment scenario develops its
  repulsive window and stable zero where the full calculation puts
  them; it overestimates the equilibrium pull below ~1 um.

Both are stand-ins, not measured or ab initio equilibrium data, and
are marked as such in the CSV comments.  Run this script from the
scenarios directory to refresh the files.
"""

import numpy as np

R_TUNGSTEN = 0.02e-6
B_SIC = 1.175e-53
A_TUNGSTEN = 1.6e-32


def write_table(path, d, f, comment):
    with open(path, "w") as handle:
        handle.write("# %s\n" % comment)
        handle.write("# stand-in table, not measured equilibrium data\n")
        handle.write("d_m,F_eq_N_per_m\n")
        for di, fi in zip(d, f):
            handle.write("%.9e,%.9e\n" % (di, fi))


def main():
    # dense log grids so the log-d linear interpolation error of the
    # pure power laws stays below 0.1%
    d_sic = np.geomspace(0.2e-6, 300e-6, 1001)
    write_table("sic_equilibrium_standin.csv",
                d_sic, -B_SIC / d_sic ** 7,
                "SiC pairwise dielectric estimate: F = -1.175e-53/d^7")

    d_w = np.geomspace(0.2e-6, 20e-6, 601)
    write_table("tungsten_equilibrium_standin.csv",
                d_w, -A_TUNGSTEN / (d_w ** 4 * np.log(d_w / R_TUNGSTEN)),
                "tungsten Drude-shape fit: F = -1.6e-32/(d^4 ln(d/R)), "
                "R = 20 nm")


if __name__ == "__main__":
    main()
