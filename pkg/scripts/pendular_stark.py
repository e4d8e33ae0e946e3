"""Rotor-to-pendular Stark spectra of ICl, at B = 0 and at B = 3000 G, 45 deg.

Also prints the convergence of the lowest levels with j_max at the top of
the scan, and the ratio of the ground level to -C_kappa at a few field
strengths to show how slowly the pendular limit is approached.
"""

import argparse
import math
from pathlib import Path

import numpy as np

from casex.fields import FieldConfig, combined_field
from casex.hamiltonian import build_pendular_hamiltonian, eigen_symmetric
from casex.molecule import UNITS, load_molecule
from casex.scans import ScanSpec, default_stark_emax, stark_scan


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", type=Path, default=Path("results"))
    p.add_argument("--jmax", type=int, default=11)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--nlevels", type=int, default=30)
    args = p.parse_args()

    icl = load_molecule("ICl_A3Pi1")
    args.out_dir.mkdir(parents=True, exist_ok=True)
    emax = default_stark_emax(icl)
    for b, deg in ((0.0, 0.0), (3000.0, 45.0)):
        cfg = FieldConfig(0.0, b, math.radians(deg))
        spec = ScanSpec(icl, "e_kvcm", 0.0, emax, args.points, cfg, mode="pendular",
                        j=args.jmax, n_levels=args.nlevels)
        path = args.out_dir / f"stark_icl_b{int(b)}.csv"
        stark_scan(spec).save(path)
        print(path)

    cfg = FieldConfig(emax, 3000.0, math.pi / 4)
    ref = eigen_symmetric(build_pendular_hamiltonian(icl, cfg, 16))[0][:6]
    for j_max in (6, 8, 10, 12, 14):
        w = eigen_symmetric(build_pendular_hamiltonian(icl, cfg, j_max))[0][:6]
        print(f"j_max {j_max:2d}: max |E - E(j_max=16)| = {np.abs(w - ref).max():.2e} GHz")

    d = icl.d_debye * UNITS.debye_kvcm_to_ghz
    for ratio in (10, 50, 200, 800):
        cfg = FieldConfig(ratio * icl.be_ghz / d, 3000.0, math.pi / 4)
        c = max(combined_field(icl, cfg, k).magnitude_ghz for k in (1, -1))
        w0 = eigen_symmetric(build_pendular_hamiltonian(icl, cfg, 28))[0][0]
        print(f"dE/B_e = {ratio:4d}: E0 / (-C) = {w0 / -c:.4f}")


if __name__ == "__main__":
    main()
