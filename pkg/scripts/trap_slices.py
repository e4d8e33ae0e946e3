"""Quadrupole-trap potentials |C_+-(r)| for OH on the x-z and x-y slices."""

import argparse
from pathlib import Path

from casex.molecule import load_molecule
from casex.scans import TrapSpec, trap_map


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", type=Path, default=Path("results"))
    p.add_argument("--gradient", type=float, default=100.0, help="Gauss/cm")
    p.add_argument("--e-vector", type=float, nargs=3, default=(1.0, 0.0, 0.5), help="kV/cm")
    p.add_argument("--extent", type=float, default=0.5, help="half-width, cm")
    p.add_argument("--points", type=int, default=41)
    args = p.parse_args()

    oh = load_molecule("OH_X2Pi32")
    r = (-args.extent, args.extent, args.points)
    trap = TrapSpec(args.gradient, tuple(args.e_vector), r, r)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for slice_ in ("xz", "xy"):
        table = trap_map(oh, trap, slice_)
        path = args.out_dir / f"trap_{slice_}.csv"
        table.save(path)
        print(f"{path}: min U+ = {table.column('U_plus_ghz').min():.4f} GHz")


if __name__ == "__main__":
    main()
