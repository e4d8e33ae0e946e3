"""Command-line front end.

Exit codes: 0 success, 2 bad arguments or degenerate field input, 3 numeric
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from casex import __version__
from casex.angular import half
from casex.errors import DegenerateAxisError, NumericError, ValidationError
from casex.fields import FieldConfig
from casex.molecule import UNITS, load_molecule
from casex.scans import (
    ScanSpec,
    TrapSpec,
    default_stark_emax,
    level_spectrum,
    stark_scan,
    tilt_scan,
    trap_map,
    zeeman_scan,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _halfint(text: str):
    try:
        return half(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _nonneg(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not math.isfinite(value) or value < 0:
        raise argparse.ArgumentTypeError(f"must be a finite value >= 0: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _vector3(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected Ex,Ey,Ez")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p, *, efield=True, bfield=True, theta=True, b_default=0.0, theta_default=0.0):
    p.add_argument("--molecule", required=True, help="preset name (OH_X2Pi32, ICl_A3Pi1) or JSON file")
    if efield:
        p.add_argument("--efield", type=_nonneg, default=0.0, help="electric field, kV/cm (default 0)")
    if bfield:
        p.add_argument("--bfield", type=_nonneg, default=b_default,
                       help=f"magnetic field, Gauss (default {b_default:g})")
    if theta:
        p.add_argument("--theta-eb", type=float, default=theta_default,
                       help=f"angle between E and B, degrees (default {theta_default:g})")
    p.add_argument("--out", default=None, help="output path (default: standard output)")


def _add_basis(p, *, default_pendular=False):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--j", type=_halfint, default=None,
                   help="fixed j, exact (e.g. 3/2); selects the fixed-j Hamiltonian")
    g.add_argument("--jmax", type=_halfint, default=None,
                   help="largest j of the j-mixed (pendular) basis, exact (e.g. 11)")
    p.add_argument("--lambda", dest="lambda_doubling", action=argparse.BooleanOptionalAction,
                   default=False, help="include Lambda-doubling")
    p.add_argument("--nlevels", type=_positive_int, default=None,
                   help="pendular mode: keep only the lowest N eigenvalues")
    p.set_defaults(default_pendular=default_pendular)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="casex", description="Case-X spectra in crossed E and B fields.")
    parser.add_argument("--version", action="version", version=f"casex {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("levels", help="energies at one field configuration")
    _add_common(p)
    _add_basis(p)

    p = sub.add_parser("zeeman-scan", help="energies versus B (GHz vs Gauss)")
    _add_common(p, bfield=False)
    p.add_argument("--bmin", type=_nonneg, default=0.0, help="scan start, Gauss (default 0)")
    p.add_argument("--bmax", type=_nonneg, default=3000.0, help="scan stop, Gauss (default 3000)")
    p.add_argument("--points", type=_positive_int, default=201, help="grid points (default 201)")
    _add_basis(p)

    p = sub.add_parser("stark-scan", help="energies versus E (GHz vs kV/cm)")
    _add_common(p, efield=False)
    p.add_argument("--emin", type=_nonneg, default=0.0, help="scan start, kV/cm (default 0)")
    p.add_argument("--emax", type=_nonneg, default=None,
                   help="scan stop, kV/cm (default: where d*E = 20 B_e)")
    p.add_argument("--points", type=_positive_int, default=201, help="grid points (default 201)")
    _add_basis(p, default_pendular=True)

    p = sub.add_parser("tilt-scan", help="dipole tilt angle versus E (radians vs kV/cm)")
    _add_common(p, efield=False, b_default=1000.0, theta_default=60.0)
    p.add_argument("--emin", type=_nonneg, default=0.0, help="scan start, kV/cm (default 0)")
    p.add_argument("--emax", type=_nonneg, default=10.0, help="scan stop, kV/cm (default 10)")
    p.add_argument("--points", type=_positive_int, default=201, help="grid points (default 201)")

    p = sub.add_parser("trap-map", help="quadrupole-trap potentials |C+-(r)| on a slice (GHz vs cm)")
    _add_common(p, efield=False, bfield=False, theta=False)
    p.add_argument("--gradient", type=_nonneg, required=True, help="field gradient, Gauss/cm")
    p.add_argument("--e-vector", type=_vector3, default=(0.0, 0.0, 0.0),
                   help="uniform electric field Ex,Ey,Ez in kV/cm (default 0,0,0)")
    p.add_argument("--slice", choices=("xz", "xy"), default="xz", help="slice plane (default xz)")
    p.add_argument("--extent", type=_nonneg, default=0.5,
                   help="half-width of the square slice, cm (default 0.5)")
    p.add_argument("--points", type=_positive_int, default=41, help="grid points per axis (default 41)")

    p = sub.add_parser("molecule-info", help="print constants of a molecule as JSON")
    p.add_argument("--molecule", required=True, help="preset name or JSON file")
    p.add_argument("--out", default=None, help="output path (default: standard output)")
    return parser


def _basis_choice(args, state):
    if args.jmax is not None:
        return "pendular", args.jmax
    if args.j is not None:
        return "fixed_j", args.j
    if args.default_pendular:
        return "pendular", state.omega_bar + 10
    return "fixed_j", state.omega_bar


def _levels(args, state) -> str:
    cfg = FieldConfig.from_degrees(args.efield, args.bfield, args.theta_eb)
    mode, j = _basis_choice(args, state)
    labels, energies = level_spectrum(state, cfg, mode, j, args.lambda_doubling, args.nlevels)
    lines = [
        f"# tool: casex {__version__}",
        f"# molecule: {state.name}",
        f"# e_kvcm: {args.efield:g}",
        f"# b_gauss: {args.bfield:g}",
        f"# theta_eb_deg: {args.theta_eb:g}",
        f"# mode: {mode} ({'j' if mode == 'fixed_j' else 'j_max'}={j})",
        f"# lambda_doubling: {'on' if args.lambda_doubling else 'off'}",
        "state,energy_ghz",
    ]
    lines += [f"{lab},{e + 0.0:.12g}" for lab, e in zip(labels, energies)]
    return "\n".join(lines) + "\n"


def _scan(args, state) -> str:
    mode, j = _basis_choice(args, state)
    if args.command == "zeeman-scan":
        cfg = FieldConfig.from_degrees(args.efield, 0.0, args.theta_eb)
        spec = ScanSpec(state, "b_gauss", args.bmin, args.bmax, args.points, cfg, mode=mode,
                        j=j, lambda_doubling=args.lambda_doubling, n_levels=args.nlevels)
        return zeeman_scan(spec).to_csv()
    cfg = FieldConfig.from_degrees(0.0, args.bfield, args.theta_eb)
    emax = default_stark_emax(state) if args.emax is None else args.emax
    spec = ScanSpec(state, "e_kvcm", args.emin, emax, args.points, cfg, mode=mode, j=j,
                    lambda_doubling=args.lambda_doubling, n_levels=args.nlevels)
    return stark_scan(spec).to_csv()


def _run(args) -> str:
    state = load_molecule(args.molecule)
    if args.command == "molecule-info":
        info = state.to_dict()
        info["stark_ghz_per_kvcm"] = state.d_debye * UNITS.debye_kvcm_to_ghz
        info["zeeman_ghz_per_gauss"] = state.g_abs * UNITS.bohr_magneton_gauss_to_ghz
        return json.dumps(info, indent=2) + "\n"
    if args.command == "levels":
        return _levels(args, state)
    if args.command in ("zeeman-scan", "stark-scan"):
        return _scan(args, state)
    if args.command == "tilt-scan":
        table = tilt_scan(state, args.bfield, math.radians(args.theta_eb),
                          args.emin, args.emax, args.points)
        return table.to_csv()
    if args.command == "trap-map":
        r = (-args.extent, args.extent, args.points)
        trap = TrapSpec(args.gradient, args.e_vector, r, r)
        return trap_map(state, trap, args.slice).to_csv()
    raise AssertionError(args.command)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        text = _run(args)
    except (ValidationError, DegenerateAxisError, ValueError) as exc:
        print(f"casex {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, ArithmeticError) as exc:
        print(f"casex {args.command}: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
