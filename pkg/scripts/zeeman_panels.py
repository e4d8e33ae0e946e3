"""Zeeman scans of OH j=3/2 at E = 5 kV/cm for three field angles, with and
without Lambda-doubling. Writes one CSV per panel."""

import argparse
import math
from pathlib import Path

from casex.fields import FieldConfig
from casex.molecule import load_molecule
from casex.scans import ScanSpec, zeeman_scan


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", type=Path, default=Path("results"))
    p.add_argument("--efield", type=float, default=5.0, help="kV/cm")
    p.add_argument("--bmax", type=float, default=3000.0, help="Gauss")
    p.add_argument("--points", type=int, default=201)
    args = p.parse_args()

    oh = load_molecule("OH_X2Pi32")
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for deg in (0, 45, 90):
        for lam in (False, True):
            cfg = FieldConfig(args.efield, 0.0, math.radians(deg))
            spec = ScanSpec(oh, "b_gauss", 0.0, args.bmax, args.points, cfg, lambda_doubling=lam)
            path = args.out_dir / f"zeeman_theta{deg}_{'lambda' if lam else 'nolambda'}.csv"
            zeeman_scan(spec).save(path)
            print(path)


if __name__ == "__main__":
    main()
