"""Dipole tilt angle of OH versus E at B = 1000 G, theta_EB = 60 deg."""

import argparse
import math
from pathlib import Path

from casex.molecule import load_molecule
from casex.scans import tilt_scan


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=Path("results/tilt.csv"))
    p.add_argument("--bfield", type=float, default=1000.0, help="Gauss")
    p.add_argument("--theta-eb", type=float, default=60.0, help="degrees")
    p.add_argument("--emax", type=float, default=10.0, help="kV/cm")
    p.add_argument("--points", type=int, default=201)
    args = p.parse_args()

    table = tilt_scan(load_molecule("OH_X2Pi32"), args.bfield, math.radians(args.theta_eb),
                      0.0, args.emax, args.points)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    table.save(args.out)
    print(args.out)


if __name__ == "__main__":
    main()
